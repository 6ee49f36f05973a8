#include "waveguide/asymptotics.hpp"
#include "waveguide/catalog.hpp"
#include "waveguide/config.hpp"
#include "waveguide/oracle.hpp"
#include "waveguide/report.hpp"
#include "waveguide/threshold_solver.hpp"
#include "waveguide/verification.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace wg;
using nlohmann::json;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string emit;  // empty: keep config value
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file");
    cmd->add_option("--set", opts.overrides, "override: section.key=value (repeatable)");
    cmd->add_option("--emit", opts.emit, "output format: csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

ExperimentConfig load(const CommonOpts& opts) {
    ExperimentConfig cfg =
        opts.config_path.empty() ? ExperimentConfig{} : parse_config_file(opts.config_path);
    for (const auto& a : opts.overrides) apply_override(cfg, a);
    if (!opts.emit.empty()) cfg.emit = opts.emit;
    cfg.validate();
    return cfg;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_modes(const CommonOpts& opts, int count) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    json out = json::array();
    for (int j = 0; j < count; ++j) {
        const TransverseMode m = mode(cs, j);
        out.push_back({{"j", j},
                       {"mu", m.mu()},
                       {"phi_origin", m.at_origin()},
                       {"dphi_origin",
                        {m.grad_origin(0), cs.transverse_dim() > 1 ? m.grad_origin(1) : 0.0}}});
    }
    emit_json({{"threshold_mu0", threshold_mu0(cs)}, {"modes", out}});
    return 0;
}

int cmd_moments(const CommonOpts& opts) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    const PotentialSpec V = cfg.potential();
    const MomentSet ms = compute_moments(V, cs);
    const ConditionReport rep = check_conditions(ms, cs);
    json out{{"potential", V.id},
             {"mean", {ms.m0.real(), ms.m0.imag()}},
             {"dipole", {ms.m1.real(), ms.m1.imag()}},
             {"phi0_origin", ms.phi0_origin},
             {"dphi0_origin", {ms.dphi0_origin[0], ms.dphi0_origin[1]}},
             {"conditions", rep.summary}};
    if (ms.has_strip) {
        out["strip_mean"] = {ms.m0_strip.real(), ms.m0_strip.imag()};
        out["strip_dipole"] = {ms.m1_strip.real(), ms.m1_strip.imag()};
    }
    emit_json(out);
    return 0;
}

int cmd_predict(const CommonOpts& opts, const std::string& regime) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    const PotentialSpec V = cfg.potential();
    const MomentSet ms = compute_moments(V, cs);
    json out = json::array();
    for (double h : cfg.h_list) {
        RegimePrediction pred;
        if (regime == "main")
            pred = predict_main(h, cfg.alpha, cs, ms);
        else if (regime == "de_baseline")
            pred = predict_de(h, V, cs);
        else if (regime == "critical")
            pred = predict_critical(h, cfg.alpha, cs, ms);
        else if (regime == "strip_critical")
            pred = predict_strip_critical(h, cfg.alpha, cs, ms);
        else
            throw std::invalid_argument("predict: unknown regime '" + regime + "'");
        out.push_back(prediction_record(h, cfg.alpha, V.id, pred));
    }
    emit_json(out);
    return 0;
}

int cmd_solve(const CommonOpts& opts) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    const PotentialSpec V = cfg.potential();
    json out = json::array();
    for (double h : cfg.h_list) {
        const ScaledPotential pot(V, h, cfg.alpha, cs);
        const ThresholdSolution sol = ThresholdSolver(cs, pot, cfg.disc).solve();
        out.push_back(solution_record(h, cfg.alpha, V.id, cfg.disc, sol));
    }
    emit_json(out);
    return 0;
}

int cmd_oracle(const CommonOpts& opts, bool do_refine, const std::string& profile_csv) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    const PotentialSpec V = cfg.potential();
    const MomentSet ms = compute_moments(V, cs);
    const double mu0 = threshold_mu0(cs);
    json out = json::array();
    for (double h : cfg.h_list) {
        const ScaledPotential pot(V, h, cfg.alpha, cs);
        const RegimePrediction pred = predict_main(h, cfg.alpha, cs, ms);
        const double k_est = std::max(pred.k.real(), 1e-6);
        const double L = cfg.oracle_half_length > 0.0 ? cfg.oracle_half_length : 15.0 / k_est;
        const double delta = cfg.oracle_delta > 0.0 ? cfg.oracle_delta : h / 6.0;
        TruncatedProblem problem(cs, pot, L, delta, cfg.oracle_modes);
        const Complex sigma = pred.e - 0.5 * (mu0 - pred.e);
        const OracleResult res = do_refine ? refine(cs, pot, problem, sigma, k_est)
                                           : lowest_eigenvalue(problem, sigma, k_est);
        out.push_back(oracle_record(h, cfg.alpha, V.id, res));
        if (!profile_csv.empty() && res.mode0_profile.size() > 0) {
            std::ofstream f(profile_csv);
            f << "# schema=1\nz,c0_re,c0_im\n";
            for (size_t i = 0; i < res.z_grid.size(); ++i)
                f << format_float(res.z_grid[i]) << ',' << format_float(res.mode0_profile[i].real())
                  << ',' << format_float(res.mode0_profile[i].imag()) << '\n';
        }
    }
    emit_json(out);
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    const ExperimentConfig cfg = load(opts);
    const CrossSection cs = cfg.cross_section();
    const PotentialSpec V = cfg.potential();
    const MomentSet ms = compute_moments(V, cs);
    const double mu0 = threshold_mu0(cs);

    std::vector<SweepRow> rows;
    for (double h : cfg.h_list) {
        SweepRow row;
        row.h = h;
        row.eps = coupling_eps(h, cfg.alpha, cs.space_dim());
        row.beta = beta_n(h, cs.space_dim());
        try {
            const RegimePrediction pred = predict_main(h, cfg.alpha, cs, ms);
            row.k_asym = pred.k;
            row.e_asym = pred.e;
            row.verdict_asym = to_string(pred.verdict);

            const ScaledPotential pot(V, h, cfg.alpha, cs);
            const ThresholdSolution sol = ThresholdSolver(cs, pot, cfg.disc).solve();
            row.k_bs = sol.k;
            row.e_bs = mu0 - sol.k * sol.k;
            row.verdict_bs = to_string(sol.verdict);
            row.residual = sol.residual;
            if (std::abs(pred.k) > 0.0) row.ratio = sol.k / pred.k;

            if (cfg.oracle_enabled && sol.verdict == Verdict::exists) {
                const double k_est = sol.k.real();
                const double L =
                    cfg.oracle_half_length > 0.0 ? cfg.oracle_half_length : 15.0 / k_est;
                const double delta = cfg.oracle_delta > 0.0 ? cfg.oracle_delta : h / 6.0;
                TruncatedProblem problem(cs, pot, L, delta, cfg.oracle_modes);
                const Complex sigma = *sol.e - 0.5 * (mu0 - *sol.e);
                const OracleResult res = lowest_eigenvalue(problem, sigma, k_est);
                row.e_oracle = res.e;
            }
        } catch (const std::exception& ex) {
            row.status = std::string("error: ") + ex.what();
        }
        rows.push_back(row);
    }

    const bool want_csv = cfg.emit == "csv" || cfg.emit == "both";
    const bool want_json = cfg.emit == "json" || cfg.emit == "both";
    if (want_csv) {
        std::ofstream f(cfg.csv_path);
        if (!f) throw std::runtime_error("cannot open " + cfg.csv_path);
        f << csv_header() << '\n';
        for (const auto& r : rows) f << csv_line(r) << '\n';
        std::cout << "wrote " << cfg.csv_path << "\n";
    }
    if (want_json) {
        std::ofstream f(cfg.json_path);
        if (!f) throw std::runtime_error("cannot open " + cfg.json_path);
        for (const auto& r : rows) f << to_json(r).dump() << '\n';
        std::cout << "wrote " << cfg.json_path << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& tag) {
    const auto results = run_verify(tag);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << r.detail << "]\n";
        all = all && r.pass;
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum waveguide threshold toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    int mode_count = 8;
    std::string regime = "main";
    std::string verify_tag = "all";
    bool oracle_refine = false;
    std::string profile_csv;

    auto* modes = app.add_subcommand("modes", "transverse Dirichlet eigenpairs");
    add_common(modes, opts);
    modes->add_option("--count", mode_count, "number of modes to list");

    auto* moments = app.add_subcommand("moments", "potential moments and sign conditions");
    add_common(moments, opts);

    auto* predict = app.add_subcommand("predict", "asymptotic eigenvalue prediction");
    add_common(predict, opts);
    predict->add_option("--regime", regime, "main | de_baseline | critical | strip_critical");

    auto* solve = app.add_subcommand("solve", "threshold-equation root and verdict");
    add_common(solve, opts);

    auto* oracle = app.add_subcommand("oracle", "truncated-cylinder eigensolver");
    add_common(oracle, opts);
    oracle->add_flag("--refine", oracle_refine, "Richardson-refined eigenvalue");
    oracle->add_option("--profile-csv", profile_csv, "dump c0(z) of the eigenvector");

    auto* sweep = app.add_subcommand("sweep", "h-sweep: predictions, solves, optional oracle");
    add_common(sweep, opts);

    auto* verify = app.add_subcommand("verify", "built-in acceptance checks");
    verify->add_option("--regime", verify_tag,
                       "main | de_baseline | critical | strip_critical | resolvent | moments | "
                       "oracle | all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (modes->parsed()) return cmd_modes(opts, mode_count);
        if (moments->parsed()) return cmd_moments(opts);
        if (predict->parsed()) return cmd_predict(opts, regime);
        if (solve->parsed()) return cmd_solve(opts);
        if (oracle->parsed()) return cmd_oracle(opts, oracle_refine, profile_csv);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (verify->parsed()) return cmd_verify(verify_tag);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
