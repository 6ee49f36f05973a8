#pragma once

#include "waveguide/catalog.hpp"
#include "waveguide/cross_section.hpp"
#include "waveguide/potential.hpp"
#include "waveguide/threshold_solver.hpp"

#include <string>
#include <vector>

namespace wg {

// Experiment description: cross-section, potential, scaling, solver and
// oracle settings, output paths. Parsed from a sectioned key-value file;
// unknown keys are hard errors.
struct ExperimentConfig {
    // [cross_section]
    int n = 2;
    double x1_min = -M_PI / 2.0, x1_max = M_PI / 2.0;
    double x2_min = -M_PI / 2.0, x2_max = M_PI / 2.0;

    // [potential]
    std::string pot_name = "box";
    Complex amplitude{-1.0, 0.0};
    std::array<double, 3> halfwidth{0.5, 0.5, 0.5};
    std::vector<AxisPieces> axes;  // for name = tensor
    bool mean_zero = false;

    // [scaling]
    double alpha = 0.0;
    std::vector<double> h_list{0.1};

    // [solver]
    DiscretizationConfig disc;

    // [oracle]
    bool oracle_enabled = false;
    double oracle_half_length = 0.0;  // 0: auto from the predicted k
    double oracle_delta = 0.0;        // 0: auto h/6
    int oracle_modes = 8;

    // [output]
    std::string csv_path = "sweep.csv";
    std::string json_path = "sweep.jsonl";
    std::string emit = "both";  // csv | json | both

    CrossSection cross_section() const;
    PotentialSpec potential() const;
    void validate() const;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Apply a "section.key=value" override on top of a parsed config.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

}  // namespace wg
