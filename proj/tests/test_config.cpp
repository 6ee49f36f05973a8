#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveguide/config.hpp"
#include "waveguide/report.hpp"

#include <cmath>

using namespace wg;

namespace {

const char* kExample = R"(
# attractive box on the symmetric strip
[cross_section]
n = 2
x1_min = -1.5707963267948966
x1_max = 1.5707963267948966

[potential]
name = box
amplitude_re = -1
amplitude_im = 0.25

[scaling]
alpha = 0.5
h = 0.2 0.1 0.05

[solver]
j_max = 40
nodes_per_panel = 20

[oracle]
enabled = true
modes = 10

[output]
emit = csv
csv = out.csv
)";

}  // namespace

TEST_CASE("round trip of a full config") {
    const ExperimentConfig cfg = parse_config_text(kExample);
    CHECK(cfg.n == 2);
    CHECK(cfg.x1_max == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    CHECK(cfg.pot_name == "box");
    CHECK(cfg.amplitude == Complex(-1.0, 0.25));
    CHECK(cfg.alpha == 0.5);
    REQUIRE(cfg.h_list.size() == 3);
    CHECK(cfg.h_list[1] == 0.1);
    CHECK(cfg.disc.j_max == 40);
    CHECK(cfg.disc.nodes_per_panel == 20);
    CHECK(cfg.oracle_enabled);
    CHECK(cfg.oracle_modes == 10);
    CHECK(cfg.emit == "csv");
    CHECK(cfg.csv_path == "out.csv");
    CHECK_NOTHROW((void)cfg.cross_section());
    CHECK(cfg.potential().id == "box");
}

TEST_CASE("unknown keys and sections are hard errors") {
    CHECK_THROWS_WITH((void)parse_config_text("[solver]\nj_mx = 40\n"),
                      doctest::Contains("unknown key"));
    CHECK_THROWS_WITH((void)parse_config_text("[slover]\nj_max = 40\n"),
                      doctest::Contains("unknown section"));
    CHECK_THROWS_WITH((void)parse_config_text("j_max = 40\n"),
                      doctest::Contains("outside any section"));
    CHECK_THROWS_WITH((void)parse_config_text("[solver]\nj_max\n"),
                      doctest::Contains("key = value"));
}

TEST_CASE("value validation") {
    CHECK_THROWS_WITH((void)parse_config_text("[scaling]\nh = 1.5\n"),
                      doctest::Contains("lie in (0,1)"));
    CHECK_THROWS_WITH((void)parse_config_text("[scaling]\nalpha = 2\n"),
                      doctest::Contains("alpha"));
    CHECK_THROWS_WITH((void)parse_config_text("[output]\nemit = xml\n"),
                      doctest::Contains("emit"));
    CHECK_THROWS_WITH((void)parse_config_text("[oracle]\nenabled = maybe\n"),
                      doctest::Contains("boolean"));
}

TEST_CASE("geometric h ladder") {
    const ExperimentConfig cfg = parse_config_text("[scaling]\nh_geometric = 0.4 0.05 4\n");
    REQUIRE(cfg.h_list.size() == 4);
    CHECK(cfg.h_list.front() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(cfg.h_list.back() == doctest::Approx(0.05).epsilon(1e-12));
    const double r1 = cfg.h_list[1] / cfg.h_list[0];
    const double r2 = cfg.h_list[2] / cfg.h_list[1];
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("overrides") {
    ExperimentConfig cfg = parse_config_text(kExample);
    apply_override(cfg, "scaling.alpha=-1");
    CHECK(cfg.alpha == -1.0);
    apply_override(cfg, "potential.name=linear_box");
    CHECK(cfg.pot_name == "linear_box");
    CHECK_THROWS_WITH((void)apply_override(cfg, "solver.bogus=1"),
                      doctest::Contains("unknown key"));
    CHECK_THROWS_WITH((void)apply_override(cfg, "noequals"), doctest::Contains("section.key"));
}

TEST_CASE("tensor potential pieces through the config") {
    const ExperimentConfig cfg = parse_config_text(
        "[potential]\nname = tensor\nx1_piece = -0.5 0.5 : 0 1\nx2_piece = -1 1 : 1\n"
        "mean_zero = true\n");
    const PotentialSpec V = cfg.potential();
    CHECK(V.id == "tensor");
    CHECK(V.separable.has_value());
    // default amplitude is -1, axis factors are t1 and the unit indicator
    CHECK(V(std::array<double, 3>{0.25, 0.0, 0.0}).real() == doctest::Approx(-0.25));
    CHECK(V.mean_zero);
}

TEST_CASE("csv schema line and float formatting") {
    CHECK(csv_header().substr(0, 10) == "# schema=1");
    CHECK(format_float(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_float(0.1) == "0.10000000000000001");
    CHECK(format_float(-2.0) == "-2");
}

TEST_CASE("csv lines are deterministic") {
    SweepRow row;
    row.h = 0.1;
    row.eps = coupling_eps(0.1, 0.25, 2);
    row.beta = beta_n(0.1, 2);
    row.k_asym = {3.1830988618379052e-3, 0.0};
    row.k_bs = {3.1898425724873221e-3, -1.0e-9};
    row.e_asym = {0.9999898678816358, 0.0};
    row.e_bs = {0.9999898249043627, 0.0};
    row.verdict_asym = "exists";
    row.verdict_bs = "exists";
    row.ratio = row.k_bs / row.k_asym;
    const std::string a = csv_line(row);
    const std::string b = csv_line(row);
    CHECK(a == b);
    // same column count as the header's schema row
    const auto count = [](const std::string& s) {
        return std::count(s.begin(), s.end(), ',');
    };
    const std::string header = csv_header();
    const std::string cols = header.substr(header.find('\n') + 1);
    CHECK(count(a) == count(cols));
}
