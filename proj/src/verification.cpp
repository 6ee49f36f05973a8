#include "waveguide/verification.hpp"

#include "waveguide/asymptotics.hpp"
#include "waveguide/catalog.hpp"
#include "waveguide/oracle.hpp"
#include "waveguide/threshold_solver.hpp"

#include <cmath>
#include <sstream>

namespace wg {

namespace {

CrossSection sym_strip() { return CrossSection::interval(-M_PI / 2.0, M_PI / 2.0); }
CrossSection asym_strip() { return CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0); }
CrossSection sym_square() {
    return CrossSection::rectangle(-M_PI / 2.0, M_PI / 2.0, -M_PI / 2.0, M_PI / 2.0);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

ThresholdSolution solve_fixture(const CrossSection& cs, const PotentialSpec& V, double h,
                                double alpha, DiscretizationConfig cfg = {}) {
    const ScaledPotential pot(V, h, alpha, cs);
    return ThresholdSolver(cs, pot, cfg).solve();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int m = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Criterion 1: leading-order law of the main regime on the symmetric strip.
std::vector<CheckResult> criterion1() {
    const CrossSection cs = sym_strip();
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    const MomentSet ms = compute_moments(V, cs);
    const double p0 = mode(cs, 0).at_origin();
    std::vector<CheckResult> out;
    double prev_err = 1e30;
    bool all_in_band = true, monotone = true;
    std::string detail;
    for (double h : {0.2, 0.1, 0.05, 0.02}) {
        const ThresholdSolution sol = solve_fixture(cs, V, h, 0.0);
        const Complex denom = -0.5 * h * h * p0 * p0 * ms.m0;
        const double r = (sol.k / denom).real();
        const double err = std::abs(sol.k / denom - 1.0);
        const double band = 3.0 * (h + beta_n(h, 2));
        if (err > band) all_in_band = false;
        if (err > prev_err) monotone = false;
        prev_err = err;
        detail += "h=" + fmt(h) + " r=" + fmt(r) + " |r-1|=" + fmt(err) + " band=" + fmt(band) + "; ";
    }
    out.push_back({"criterion 1: leading-order law k/( -h^2 phi0^2 <V>/2 ) -> 1",
                   all_in_band && monotone, detail});
    return out;
}

// Criterion 2: eigenvalue identity e = mu0 - k^2 for every existing solve.
std::vector<CheckResult> criterion2() {
    const CrossSection cs = sym_strip();
    const double mu0 = threshold_mu0(cs);
    bool pass = true;
    std::string detail;
    for (double h : {0.1, 0.05}) {
        for (Complex amp : {Complex(-1.0, 0.0), Complex(-1.0, 0.3)}) {
            const ThresholdSolution sol = solve_fixture(cs, make_box_potential(2, amp), h, 0.0);
            if (sol.verdict != Verdict::exists || !sol.e) {
                pass = false;
                detail += "missing eigenvalue at h=" + fmt(h) + "; ";
                continue;
            }
            const double diff = std::abs(*sol.e - (mu0 - sol.k * sol.k));
            if (diff > 1e-15 * mu0) pass = false;
            detail += "h=" + fmt(h) + " |e-(mu0-k^2)|=" + fmt(diff) + "; ";
        }
    }
    return {{"criterion 2: eigenvalue identity e = mu0 - k^2", pass, detail}};
}

// Criterion 3: cross-validation against the truncated-cylinder oracle.
std::vector<CheckResult> criterion3() {
    const CrossSection cs = sym_strip();
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    const double h = 0.3, alpha = 0.5;
    const double mu0 = threshold_mu0(cs);

    const ThresholdSolution sol = solve_fixture(cs, V, h, alpha);
    const MomentSet ms = compute_moments(V, cs);
    const RegimePrediction pred = predict_main(h, alpha, cs, ms);
    const double k_est = pred.k.real();

    const ScaledPotential pot(V, h, alpha, cs);
    const double L = 15.0 / k_est;
    TruncatedProblem base(cs, pot, L, 0.05, 12);
    const Complex sigma = pred.e - 0.5 * (mu0 - pred.e);
    const OracleResult ref = refine(cs, pot, base, sigma, k_est);

    if (!sol.e || !ref.e)
        return {{"criterion 3: oracle cross-validation", false, "missing eigenvalue"}};
    const double gap = (mu0 - *sol.e).real();
    const double rel = std::abs(*ref.e - *sol.e) / gap;
    return {{"criterion 3: oracle cross-validation |e_oracle - e_bs|/gap <= 1e-3",
             rel <= 1e-3,
             "e_bs=" + fmt(sol.e->real()) + " e_oracle=" + fmt(ref.e->real()) +
                 " rel=" + fmt(rel) + " oracle_err_est=" + fmt(ref.error_estimate)}};
}

// Criterion 4: existence dichotomy for real and complex box potentials.
std::vector<CheckResult> criterion4() {
    const CrossSection cs = sym_strip();
    struct Case {
        Complex amp;
        Verdict expect;
    };
    const Case cases[] = {{{-1.0, 0.0}, Verdict::exists},
                          {{1.0, 0.0}, Verdict::absent},
                          {{-1.0, 0.3}, Verdict::exists},
                          {{1.0, 0.3}, Verdict::absent}};
    bool pass = true;
    std::string detail;
    for (double h : {0.1, 0.05})
        for (const Case& c : cases) {
            const ThresholdSolution sol =
                solve_fixture(cs, make_box_potential(2, c.amp), h, 0.0);
            const bool ok = sol.verdict == c.expect;
            if (!ok) pass = false;
            detail += "h=" + fmt(h) + " amp=(" + fmt(c.amp.real()) + "," + fmt(c.amp.imag()) +
                      ") -> " + to_string(sol.verdict) + (ok ? "; " : " (MISMATCH); ");
        }
    return {{"criterion 4: existence dichotomy (mean-sign rule)", pass, detail}};
}

// Criterion 5: two-term moment expansion remainder rate h^{n+2}.
std::vector<CheckResult> criterion5() {
    std::vector<CheckResult> out;
    for (int n : {2, 3}) {
        const CrossSection cs = n == 2 ? sym_strip() : sym_square();
        const PotentialSpec V = make_box_potential(n, {-1.0, 0.0});
        std::vector<double> hs{0.2, 0.1, 0.05, 0.025}, rem;
        for (double h : hs) rem.push_back(expansion_remainder(V, h, cs));
        const double slope = loglog_slope(hs, rem);
        const bool pass = slope >= n + 1.5 && slope <= n + 2.5;
        out.push_back({"criterion 5: moment expansion remainder order, n=" + std::to_string(n),
                       pass, "fitted slope=" + fmt(slope)});
    }
    return out;
}

// Criterion 6: closed-form mode components of the regularized resolvent.
std::vector<CheckResult> criterion6() {
    const CrossSection cs = asym_strip();
    const PotentialSpec V = make_odd_linear_strip_potential({1.0, 0.0});
    const double h = 0.1;
    const Complex k(0.05, 0.0);
    const ScaledPotential pot(V, h, 0.0, cs);
    ThresholdSolver solver(cs, pot, {});

    const TransverseMode m0 = mode(cs, 0);
    const Eigen::VectorXcd g = solver.sample([&](const std::array<double, 3>& x) {
        return pot.profile_at(x) * m0.eval1(x[0]);
    });

    // 1D strip moments <phi_j v_h phi_0>' on x1 in h*[-1/2,1/2].
    auto strip_moment = [&](int j) {
        const QuadRule r = panel_rule({-0.5 * h, 0.5 * h}, 64);
        const TransverseMode mj = mode(cs, j);
        Complex acc{};
        for (int i = 0; i < r.x.size(); ++i)
            acc += r.w[i] * (r.x[i] / h) * mj.eval1(r.x[i]) * m0.eval1(r.x[i]);
        return acc;
    };

    bool pass = true;
    std::string detail;
    for (int j = 0; j <= 5; ++j) {
        const Eigen::VectorXcd comp = solver.mode_component_R(g, k, j);
        const Complex mom = strip_moment(j);
        const Complex kjv = j == 0 ? k : kj(cs, j, k);
        double maxdiff = 0.0;
        for (int m = 0; m < solver.grid_size(); ++m) {
            const auto x = solver.node(m);
            Complex expect;
            if (j == 0) {
                const Complex b0 =
                    (1.0 / k) * ((1.0 / k) * (1.0 - std::exp(-k * h) * std::cosh(k * x[1])) - h);
                expect = b0 * m0.eval1(x[0]) * mom;
            } else {
                const Complex bj = 1.0 - std::exp(-kjv * h) * std::cosh(kjv * x[1]);
                expect = bj * mode(cs, j).eval1(x[0]) * mom / (kjv * kjv);
            }
            maxdiff = std::max(maxdiff, std::abs(comp[m] - expect));
        }
        if (maxdiff > 1e-10) pass = false;
        detail += "j=" + std::to_string(j) + " max|diff|=" + fmt(maxdiff) + "; ";
    }
    return {{"criterion 6: closed-form resolvent components b_j", pass, detail}};
}

// Criterion 7: strip critical dichotomy and rate at h = 0.05, alpha = 0.25.
std::vector<CheckResult> criterion7() {
    const CrossSection cs = asym_strip();
    const double h = 0.05, alpha = 0.25;
    const TransverseMode m0 = mode(cs, 0);

    bool pass = true;
    std::string detail;
    Verdict v_plus{}, v_minus{};
    for (double s : {1.0, -1.0}) {
        const PotentialSpec V = make_odd_linear_strip_potential({s, 0.0});
        const ThresholdSolution sol = solve_fixture(cs, V, h, alpha);
        const MomentSet ms = compute_moments(V, cs);
        const RegimePrediction pred = predict_strip_critical(h, alpha, cs, ms);
        // sign rule: k ~ -2 phi0(0) phi0'(0) int v t1
        const double sign_rule = -2.0 * m0.at_origin() * m0.grad_origin(0) * ms.m1_strip.real();
        if (sol.k.real() * sign_rule <= 0.0) pass = false;
        const double rate = std::abs(sol.k / pred.k - 1.0);
        if (rate > 3.0 * std::pow(h, 0.25)) pass = false;
        (s > 0 ? v_plus : v_minus) = sol.verdict;
        detail += "s=" + fmt(s) + " k=" + fmt(sol.k.real()) + " |k/k_asym-1|=" + fmt(rate) + "; ";
    }
    const bool opposite = (v_plus == Verdict::absent && v_minus == Verdict::exists) ||
                          (v_plus == Verdict::exists && v_minus == Verdict::absent);
    if (!opposite) pass = false;
    detail += "verdicts " + to_string(v_plus) + "/" + to_string(v_minus);
    return {{"criterion 7: strip critical dichotomy and rate", pass, detail}};
}

// Criterion 8: critical regime, alpha = -1, <V> = 0 fixture.
std::vector<CheckResult> criterion8() {
    const CrossSection cs = asym_strip();
    const double alpha = -1.0;
    const TransverseMode m0 = mode(cs, 0);

    bool pass = true;
    std::string detail;
    for (double s : {1.0, -1.0}) {
        const PotentialSpec V = make_linear_box_potential(2, {s, 0.0});
        const MomentSet ms = compute_moments(V, cs);
        const double crit = m0.at_origin() * ms.m1.real();
        std::vector<double> errs;
        for (double h : {0.1, 0.05}) {
            const ThresholdSolution sol = solve_fixture(cs, V, h, alpha);
            const Verdict expect = crit > 0 ? Verdict::absent : Verdict::exists;
            if (sol.verdict != expect) pass = false;
            if (expect == Verdict::exists) {
                const RegimePrediction pred = predict_critical(h, alpha, cs, ms);
                errs.push_back(std::abs(sol.k / pred.k - 1.0));
                detail += "s=" + fmt(s) + " h=" + fmt(h) + " |k/k_asym-1|=" + fmt(errs.back()) + "; ";
            } else {
                detail += "s=" + fmt(s) + " h=" + fmt(h) + " " + to_string(sol.verdict) + "; ";
            }
        }
        if (errs.size() == 2 && !(errs[1] < errs[0])) pass = false;
    }
    return {{"criterion 8: critical regime (alpha < 0) sign rule and rate", pass, detail}};
}

// Criterion 9: Neumann series vs direct solve; geometric term decay.
std::vector<CheckResult> criterion9() {
    const CrossSection cs = sym_strip();
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    std::vector<CheckResult> out;

    {
        const double h = 0.1;
        const Complex k(0.003, 0.0);
        const ScaledPotential pot(V, h, 0.0, cs);
        DiscretizationConfig series_cfg;
        series_cfg.series_order = 4;
        const FEvaluation fs = ThresholdSolver(cs, pot, series_cfg).f_eps(k);
        const FEvaluation fd = ThresholdSolver(cs, pot, {}).f_eps(k);
        const double rel = std::abs(fs.value - fd.value) / std::abs(fd.value);
        out.push_back({"criterion 9a: series (N=4) vs direct F_eps, rel <= 1e-6", rel <= 1e-6,
                       "rel=" + fmt(rel)});
    }
    {
        bool pass = true;
        std::string detail;
        double prev = 1e30;
        for (double h : {0.2, 0.1, 0.05}) {
            DiscretizationConfig cfg;
            cfg.series_order = 5;
            const ScaledPotential pot(V, h, 0.0, cs);
            const FEvaluation f = ThresholdSolver(cs, pot, cfg).f_eps(Complex(0.003, 0.0));
            double rmax = 0.0;
            for (size_t j = 1; j + 1 < f.series_terms.size(); ++j)
                rmax = std::max(rmax,
                                std::abs(f.series_terms[j + 1]) / std::abs(f.series_terms[j]));
            if (rmax > 10.0 * beta_n(h, 2)) pass = false;
            if (rmax > prev) pass = false;
            prev = rmax;
            detail += "h=" + fmt(h) + " ratio=" + fmt(rmax) + " 10*beta=" + fmt(10.0 * beta_n(h, 2)) + "; ";
        }
        out.push_back({"criterion 9b: series term decay ratio tracks beta_2(h)", pass, detail});
    }
    return out;
}

// Criterion 10: Scaling probe bounded over h = 2^-2 .. 2^-8.
std::vector<CheckResult> criterion10() {
    std::vector<CheckResult> out;
    for (int n : {2, 3}) {
        const CrossSection cs = n == 2 ? sym_strip() : sym_square();
        const TransverseMode m0 = mode(cs, 0);
        const PotentialSpec box = make_box_potential(n, {1.0, 0.0});
        const int d = cs.transverse_dim();
        double worst = 0.0;
        for (int m = 2; m <= 8; ++m) {
            const double h = std::pow(2.0, -m);
            const Complex mass =
                std::pow(h, n) * quadrature_moment(box, [&](const std::array<double, 3>& t) {
                    double xp[2] = {h * t[0], d > 1 ? h * t[1] : 0.0};
                    const double p = m0.eval(xp);
                    const double zn = h * t[n - 1];
                    const double u = p * std::exp(-zn * zn);
                    return u * u;
                });
            worst = std::max(worst, mass.real() / (beta_n(h, n) * beta_n(h, n)));
        }
        out.push_back({"criterion 10: scaling probe bounded, n=" + std::to_string(n), worst < 10.0,
                       "max ratio=" + fmt(worst)});
    }
    return out;
}

// Baseline-operator rate check: e(h) = mu0 - (h^2/4)<V phi0^2>^2 + O(h^3),
// measured against the truncated-cylinder eigensolver for -Delta + hV.
std::vector<CheckResult> de_baseline_rate() {
    const CrossSection cs = asym_strip();
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    const double mu0 = threshold_mu0(cs);
    std::vector<double> hs{0.4, 0.2, 0.1}, diffs;
    bool pass = true;
    std::string detail;
    for (double h : hs) {
        const RegimePrediction pred = predict_de(h, V, cs);
        const double k_est = pred.k.real();
        const double L = 15.0 / k_est;
        TruncatedProblem coarse(cs, V, Complex(h, 0.0), L, 0.08, 10);
        TruncatedProblem fine(cs, V, Complex(h, 0.0), L, 0.04, 10);
        const Complex sigma = pred.e - 0.5 * (mu0 - pred.e);
        const OracleResult rc = lowest_eigenvalue(coarse, sigma);
        const OracleResult rf = lowest_eigenvalue(fine, sigma);
        if (!rc.e || !rf.e) {
            pass = false;
            detail += "h=" + fmt(h) + " oracle found none; ";
            continue;
        }
        const Complex e_fd = (4.0 * *rf.e - *rc.e) / 3.0;
        diffs.push_back(std::abs(e_fd - pred.e));
        detail += "h=" + fmt(h) + " |e_fd - e_de|=" + fmt(diffs.back()) + "; ";
    }
    if (diffs.size() == hs.size()) {
        const double slope = loglog_slope(hs, diffs);
        detail += "fitted order=" + fmt(slope);
        if (!(slope >= 2.5 && slope <= 4.5)) pass = false;
        if (!(diffs[0] > diffs[1] && diffs[1] > diffs[2])) pass = false;
    } else {
        pass = false;
    }
    return {{"de_baseline: O(h^3) defect of the h^2 eigenvalue law", pass, detail}};
}

}  // namespace

std::vector<CheckResult> run_criterion(int index) {
    switch (index) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
        default: throw std::invalid_argument("run_criterion: index must be 1..10");
    }
}

std::vector<CheckResult> run_acceptance() {
    std::vector<CheckResult> out;
    for (int i = 1; i <= 10; ++i) {
        auto r = run_criterion(i);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<CheckResult> run_verify(const std::string& tag) {
    auto collect = [](std::initializer_list<int> idx) {
        std::vector<CheckResult> out;
        for (int i : idx) {
            auto r = run_criterion(i);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    };
    if (tag == "main") return collect({1, 2, 4, 9});
    if (tag == "de_baseline") return de_baseline_rate();
    if (tag == "critical") return collect({8});
    if (tag == "strip_critical") return collect({7});
    if (tag == "resolvent") return collect({6});
    if (tag == "moments") return collect({5, 10});
    if (tag == "oracle") return collect({3});
    if (tag == "all") {
        auto out = run_acceptance();
        auto de = de_baseline_rate();
        out.insert(out.end(), de.begin(), de.end());
        return out;
    }
    throw std::invalid_argument("verify: unknown regime tag '" + tag + "'");
}

}  // namespace wg
