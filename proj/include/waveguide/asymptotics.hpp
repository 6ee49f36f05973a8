#pragma once

#include "waveguide/cross_section.hpp"
#include "waveguide/potential.hpp"
#include "waveguide/verdict.hpp"

#include <cmath>
#include <string>

namespace wg {

enum class Regime { de_baseline, main, critical_alpha_neg, strip_critical };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::de_baseline: return "de_baseline";
        case Regime::main: return "main";
        case Regime::critical_alpha_neg: return "critical_alpha_neg";
        default: return "strip_critical";
    }
}

struct RegimePrediction {
    Regime regime;
    Complex k{};
    Complex e{};  // mu_0 - k^2, exactly
    Verdict verdict = Verdict::indeterminate;
    std::string remainder;  // symbolic remainder order
};

// Sign conditions deciding existence, with a tolerance band for "= 0".
struct ConditionReport {
    static constexpr double zero_tol = 1e-12;

    int sign_mean = 0;           // sign of Re<V>
    Verdict mean_sign = Verdict::indeterminate;
    int sign_critical = 0;       // sign of phi_0(0) Re<Phi_0 V>
    Verdict critical = Verdict::indeterminate;  // applies when sign_mean == 0, alpha < 0
    bool strip_applicable = false;
    int sign_strip = 0;          // sign of phi_0(0) phi_0'(0) int v t1 dt1
    Verdict strip = Verdict::indeterminate;
    std::string summary;
};

namespace detail {
inline int band_sign(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
}

inline ConditionReport check_conditions(const MomentSet& ms, const CrossSection& cs) {
    ConditionReport r;
    const double tol = ConditionReport::zero_tol;
    r.sign_mean = ms.m0_zero_declared ? 0 : detail::band_sign(ms.m0.real(), tol);
    if (r.sign_mean < 0)
        r.mean_sign = Verdict::exists;
    else if (r.sign_mean > 0)
        r.mean_sign = Verdict::absent;

    const double crit = ms.phi0_origin * ms.m1.real();
    r.sign_critical = detail::band_sign(crit, tol);
    if (r.sign_mean == 0) {
        if (r.sign_critical < 0)
            r.critical = Verdict::exists;
        else if (r.sign_critical > 0)
            r.critical = Verdict::absent;
    }

    if (ms.has_strip && cs.space_dim() == 2 &&
        (ms.m0_strip_zero_declared || detail::band_sign(ms.m0_strip.real(), tol) == 0)) {
        r.strip_applicable = true;
        const TransverseMode m0 = mode(cs, 0);
        const double s = m0.at_origin() * m0.grad_origin(0) * ms.m1_strip.real();
        r.sign_strip = detail::band_sign(s, tol);
        // k = -2 h^{3-a} phi_0(0) phi_0'(0) int v t1; exists iff Re k > 0.
        if (r.sign_strip < 0)
            r.strip = Verdict::exists;
        else if (r.sign_strip > 0)
            r.strip = Verdict::absent;
    }

    if (r.sign_mean < 0)
        r.summary = "exists (mean-sign rule)";
    else if (r.sign_mean > 0)
        r.summary = "absent (mean-sign rule)";
    else if (r.critical == Verdict::exists)
        r.summary = "exists (critical, alpha < 0)";
    else if (r.critical == Verdict::absent)
        r.summary = "absent (critical, alpha < 0)";
    else if (r.strip == Verdict::exists)
        r.summary = "exists (strip critical)";
    else if (r.strip == Verdict::absent)
        r.summary = "absent (strip critical)";
    else
        r.summary = "indeterminate";
    return r;
}

// Baseline operator -Delta_D + hV: e = mu_0 - (h^2/4) <V phi_0^2>^2 + O(h^3),
// valid when <V phi_0^2> <= 0. V here is unscaled on the cylinder.
inline RegimePrediction predict_de(double h, const PotentialSpec& V, const CrossSection& cs,
                                   int nodes_per_panel = 32) {
    const TransverseMode m0 = mode(cs, 0);
    const int d = cs.transverse_dim();
    const Complex wm = quadrature_moment(
        V,
        [&](const std::array<double, 3>& t) {
            double xp[2] = {t[0], d > 1 ? t[1] : 0.0};
            const double p = m0.eval(xp);
            return p * p;
        },
        nodes_per_panel);
    if (wm.real() > ConditionReport::zero_tol)
        throw std::domain_error("predict_de: <V phi_0^2> > 0, no eigenvalue below threshold");
    RegimePrediction p;
    p.regime = Regime::de_baseline;
    p.k = 0.5 * h * wm * (-1.0);  // k = -h <V phi_0^2>/2 > 0
    p.e = m0.mu() - p.k * p.k;
    p.verdict = Verdict::exists;
    p.remainder = "O(h^3)";
    return p;
}

// Two-term threshold root for the main regime:
// k = -(h^{n-alpha}/2)(phi_0^2(0)<V> + 2h phi_0(0)<Phi_0 V>).
inline RegimePrediction predict_main(double h, double alpha, const CrossSection& cs,
                                     const MomentSet& ms) {
    if (!(alpha < 1.0)) throw std::domain_error("predict_main: alpha >= 1 is out of scope");
    const int n = cs.space_dim();
    RegimePrediction p;
    p.regime = Regime::main;
    const double p0 = ms.phi0_origin;
    p.k = -0.5 * std::pow(h, n - alpha) * (p0 * p0 * ms.m0 + 2.0 * h * p0 * ms.m1);
    p.e = threshold_mu0(cs) - p.k * p.k;
    p.remainder = "O(h + h^{-alpha} beta_n(h))";
    const double tol = ConditionReport::zero_tol;
    p.verdict = p.k.real() > tol ? Verdict::exists
                                 : (p.k.real() < -tol ? Verdict::absent : Verdict::indeterminate);
    return p;
}

// Critical regime (alpha < 0, Re<V> = 0): k = -h^{n+1-alpha} phi_0(0) <Phi_0 V>.
inline RegimePrediction predict_critical(double h, double alpha, const CrossSection& cs,
                                         const MomentSet& ms) {
    if (!(alpha < 0.0))
        throw std::domain_error("predict_critical: stated for alpha < 0 only");
    const double tol = ConditionReport::zero_tol;
    if (!ms.m0_zero_declared && std::abs(ms.m0.real()) > tol)
        throw std::domain_error("predict_critical: Re<V> != 0, not the critical case");
    const int n = cs.space_dim();
    RegimePrediction p;
    p.regime = Regime::critical_alpha_neg;
    p.k = -std::pow(h, n + 1 - alpha) * ms.phi0_origin * ms.m1;
    p.e = threshold_mu0(cs) - p.k * p.k;
    p.remainder = "O(h + h^{-1-alpha} beta_n(h))";
    p.verdict = p.k.real() > tol ? Verdict::exists
                                 : (p.k.real() < -tol ? Verdict::absent : Verdict::indeterminate);
    return p;
}

// Strip critical case (n = 2, V = v(t1) indicator(|t2|<1), <v>' = 0, 0 <= alpha < 1/2):
// k = -2 h^{3-alpha} phi_0(0) phi_0'(0) int v(t1) t1 dt1.
inline RegimePrediction predict_strip_critical(double h, double alpha, const CrossSection& cs,
                                               const MomentSet& ms) {
    if (cs.space_dim() != 2)
        throw std::domain_error("predict_strip_critical: strip (n = 2) only");
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::domain_error("predict_strip_critical: stated for 0 <= alpha < 1/2");
    if (!ms.has_strip)
        throw std::domain_error("predict_strip_critical: potential is not in separable strip form");
    const double tol = ConditionReport::zero_tol;
    if (!ms.m0_strip_zero_declared && std::abs(ms.m0_strip.real()) > tol)
        throw std::domain_error("predict_strip_critical: <v>' != 0, not the critical case");

    const TransverseMode m0 = mode(cs, 0);
    RegimePrediction p;
    p.regime = Regime::strip_critical;
    p.remainder = "O(h^{1/2 - alpha})";
    if (std::abs(m0.grad_origin(0)) <= tol) {
        // Symmetric strip: phi_0'(0) = 0, the leading term vanishes, no conclusion.
        p.k = {};
        p.e = m0.mu();
        p.verdict = Verdict::indeterminate;
        return p;
    }
    p.k = -2.0 * std::pow(h, 3.0 - alpha) * m0.at_origin() * m0.grad_origin(0) * ms.m1_strip;
    p.e = m0.mu() - p.k * p.k;
    p.verdict = p.k.real() > tol ? Verdict::exists
                                 : (p.k.real() < -tol ? Verdict::absent : Verdict::indeterminate);
    return p;
}

}  // namespace wg
