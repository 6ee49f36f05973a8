#include "waveguide/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>

namespace wg {

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_header() {
    return "# schema=1\n"
           "h,eps,beta,k_asym_re,k_asym_im,k_bs_re,k_bs_im,e_asym_re,e_asym_im,"
           "e_bs_re,e_bs_im,e_oracle_re,e_oracle_im,verdict_asym,verdict_bs,"
           "residual,ratio_re,ratio_im,status";
}

std::string csv_line(const SweepRow& r) {
    std::string out;
    auto add = [&out](const std::string& s) {
        if (!out.empty()) out += ',';
        out += s;
    };
    add(format_float(r.h));
    add(format_float(r.eps));
    add(format_float(r.beta));
    add(format_float(r.k_asym.real()));
    add(format_float(r.k_asym.imag()));
    add(format_float(r.k_bs.real()));
    add(format_float(r.k_bs.imag()));
    add(format_float(r.e_asym.real()));
    add(format_float(r.e_asym.imag()));
    add(format_float(r.e_bs.real()));
    add(format_float(r.e_bs.imag()));
    add(r.e_oracle ? format_float(r.e_oracle->real()) : "");
    add(r.e_oracle ? format_float(r.e_oracle->imag()) : "");
    add(r.verdict_asym);
    add(r.verdict_bs);
    add(format_float(r.residual));
    add(r.ratio ? format_float(r.ratio->real()) : "");
    add(r.ratio ? format_float(r.ratio->imag()) : "");
    add(r.status);
    return out;
}

namespace {
nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }
}  // namespace

nlohmann::json to_json(const SweepRow& r) {
    nlohmann::json j{{"h", r.h},
                     {"eps", r.eps},
                     {"beta", r.beta},
                     {"k_asym", complex_json(r.k_asym)},
                     {"k_bs", complex_json(r.k_bs)},
                     {"e_asym", complex_json(r.e_asym)},
                     {"e_bs", complex_json(r.e_bs)},
                     {"verdict_asym", r.verdict_asym},
                     {"verdict_bs", r.verdict_bs},
                     {"residual", r.residual},
                     {"status", r.status}};
    if (r.e_oracle) j["e_oracle"] = complex_json(*r.e_oracle);
    if (r.ratio) j["ratio"] = complex_json(*r.ratio);
    return j;
}

nlohmann::json solution_record(double h, double alpha, const std::string& potential_id,
                               const DiscretizationConfig& cfg, const ThresholdSolution& sol) {
    nlohmann::json j{{"record", "threshold_solution"},
                     {"h", h},
                     {"alpha", alpha},
                     {"potential", potential_id},
                     {"config",
                      {{"j_max", cfg.j_max},
                       {"nodes_per_panel", cfg.nodes_per_panel},
                       {"series_order", cfg.series_order}}},
                     {"k", complex_json(sol.k)},
                     {"verdict", to_string(sol.verdict)},
                     {"residual", sol.residual},
                     {"eps", sol.eps},
                     {"iterations", sol.iterations},
                     {"solve_mode", sol.solve_mode},
                     {"mode_tail_estimate", sol.mode_tail_estimate}};
    if (sol.e) j["e"] = complex_json(*sol.e);
    return j;
}

nlohmann::json prediction_record(double h, double alpha, const std::string& potential_id,
                                 const RegimePrediction& pred) {
    return {{"record", "regime_prediction"},
            {"h", h},
            {"alpha", alpha},
            {"potential", potential_id},
            {"regime", to_string(pred.regime)},
            {"k", complex_json(pred.k)},
            {"e", complex_json(pred.e)},
            {"verdict", to_string(pred.verdict)},
            {"remainder", pred.remainder}};
}

nlohmann::json oracle_record(double h, double alpha, const std::string& potential_id,
                             const OracleResult& res) {
    nlohmann::json j{{"record", "oracle_result"},
                     {"h", h},
                     {"alpha", alpha},
                     {"potential", potential_id},
                     {"found", res.e.has_value()},
                     {"margin", res.margin},
                     {"error_estimate", res.error_estimate},
                     {"iterations", res.iterations},
                     {"domain_rule_ok", res.domain_rule_ok}};
    if (res.e) j["e"] = complex_json(*res.e);
    return j;
}

}  // namespace wg
