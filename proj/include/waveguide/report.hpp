#pragma once

#include "waveguide/asymptotics.hpp"
#include "waveguide/oracle.hpp"
#include "waveguide/threshold_solver.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace wg {

// One row of an h-sweep, CSV schema 1.
struct SweepRow {
    double h = 0.0, eps = 0.0, beta = 0.0;
    Complex k_asym{}, k_bs{}, e_asym{}, e_bs{};
    std::optional<Complex> e_oracle;
    std::string verdict_asym = "indeterminate";
    std::string verdict_bs = "indeterminate";
    double residual = 0.0;
    std::optional<Complex> ratio;  // k_bs / k_asym, omitted when k_asym = 0
    std::string status = "ok";
};

// Fixed, versioned column order; reruns must be byte-identical.
std::string csv_header();
std::string csv_line(const SweepRow& row);
std::string format_float(double x);  // %.17g

nlohmann::json to_json(const SweepRow& row);
nlohmann::json solution_record(double h, double alpha, const std::string& potential_id,
                               const DiscretizationConfig& cfg, const ThresholdSolution& sol);
nlohmann::json prediction_record(double h, double alpha, const std::string& potential_id,
                                 const RegimePrediction& pred);
nlohmann::json oracle_record(double h, double alpha, const std::string& potential_id,
                             const OracleResult& res);

}  // namespace wg
