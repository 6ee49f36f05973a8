#pragma once

#include "waveguide/cross_section.hpp"
#include "waveguide/quadrature.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace wg {

// beta_2(h) = h sqrt(|ln h|), beta_n(h) = h for n >= 3; h in (0,1).
inline double beta_n(double h, int n) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("beta_n: h must lie in (0,1)");
    return (n == 2) ? h * std::sqrt(std::abs(std::log(h))) : h;
}

// eps(h) = h^{-alpha} beta_n(h), the small coupling of the scalar equation.
inline double coupling_eps(double h, double alpha, int n) {
    return std::pow(h, -alpha) * beta_n(h, n);
}

// Axis-aligned support box in the unscaled coordinates t = x/h.
struct SupportBox {
    std::array<double, 3> lo{}, hi{};
};

// Separable strip form V(t) = v(t1) * indicator(|t2| < 1).
struct SeparableTag {
    std::function<Complex(double)> v;
    double v_lo = -0.5, v_hi = 0.5;       // support of v
    std::vector<double> v_cuts;           // interior discontinuities of v
    bool v_mean_zero = false;             // <v>' declared exactly zero
};

// Piecewise-continuous, bounded, compactly supported profile on R^n,
// possibly complex-valued. Discontinuity lines are declared per axis so
// quadrature panels can align with them.
struct PotentialSpec {
    int n = 2;
    std::string id = "custom";
    std::function<Complex(const std::array<double, 3>&)> eval;
    SupportBox support;
    std::array<std::vector<double>, 3> cuts;  // interior discontinuity coordinates per axis
    std::optional<SeparableTag> separable;
    bool mean_zero = false;                   // <V> declared exactly zero

    Complex operator()(const std::array<double, 3>& t) const {
        for (int a = 0; a < n; ++a)
            if (t[a] < support.lo[a] || t[a] > support.hi[a]) return {0.0, 0.0};
        return eval(t);
    }
};

// h^{-alpha} V(x/h); support h*Q must fit inside the cylinder.
struct ScaledPotential {
    PotentialSpec base;
    double h = 0.1;
    double alpha = 0.0;

    ScaledPotential(PotentialSpec b, double h_, double alpha_, const CrossSection& cs)
        : base(std::move(b)), h(h_), alpha(alpha_) {
        if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("ScaledPotential: h must lie in (0,1)");
        if (!(alpha < 1.0)) throw std::invalid_argument("ScaledPotential: alpha must be < 1");
        for (int q = 0; q < cs.transverse_dim(); ++q) {
            if (h * base.support.lo[q] <= cs.lo(q) || h * base.support.hi[q] >= cs.hi(q))
                throw std::domain_error("ScaledPotential: scaled support h*Q does not fit inside the cylinder");
        }
    }

    Complex operator()(const std::array<double, 3>& x) const {
        std::array<double, 3> t{};
        for (int a = 0; a < base.n; ++a) t[a] = x[a] / h;
        return std::pow(h, -alpha) * base(t);
    }

    // Profile value V(x/h) without the amplitude factor h^{-alpha}.
    Complex profile_at(const std::array<double, 3>& x) const {
        std::array<double, 3> t{};
        for (int a = 0; a < base.n; ++a) t[a] = x[a] / h;
        return base(t);
    }
};

// Moment functionals consumed by the asymptotic predictors.
struct MomentSet {
    Complex m0{};        // <V>
    Complex m1{};        // <Phi_0 V> with Phi_0(t') = sum_q d(phi_0)/d(xi_q)(0) t_q
    Complex m0_strip{};  // <v>' (separable strips)
    Complex m1_strip{};  // int v(t1) t1 dt1 (separable strips)
    bool has_strip = false;
    bool m0_zero_declared = false;
    bool m0_strip_zero_declared = false;
    double phi0_origin = 0.0;
    std::array<double, 2> dphi0_origin{};
};

// int V(t) weight(t) dt over the support box, by panel-wise tensor
// Gauss-Legendre with panels split at the declared discontinuity lines.
inline Complex quadrature_moment(const PotentialSpec& V,
                                 const std::function<double(const std::array<double, 3>&)>& weight,
                                 int nodes_per_panel = 32) {
    std::array<QuadRule, 3> rules;
    for (int a = 0; a < V.n; ++a)
        rules[a] = panel_rule(make_breaks(V.support.lo[a], V.support.hi[a], V.cuts[a]), nodes_per_panel);

    Complex acc{};
    std::array<double, 3> t{};
    const int n0 = static_cast<int>(rules[0].x.size());
    const int n1 = V.n > 1 ? static_cast<int>(rules[1].x.size()) : 1;
    const int n2 = V.n > 2 ? static_cast<int>(rules[2].x.size()) : 1;
    for (int i0 = 0; i0 < n0; ++i0) {
        t[0] = rules[0].x[i0];
        for (int i1 = 0; i1 < n1; ++i1) {
            if (V.n > 1) t[1] = rules[1].x[i1];
            for (int i2 = 0; i2 < n2; ++i2) {
                if (V.n > 2) t[2] = rules[2].x[i2];
                double w = rules[0].w[i0];
                if (V.n > 1) w *= rules[1].w[i1];
                if (V.n > 2) w *= rules[2].w[i2];
                acc += w * weight(t) * V.eval(t);
            }
        }
    }
    return acc;
}

inline MomentSet compute_moments(const PotentialSpec& V, const CrossSection& cs,
                                 int nodes_per_panel = 32) {
    MomentSet ms;
    const TransverseMode m0 = mode(cs, 0);
    ms.phi0_origin = m0.at_origin();
    for (int q = 0; q < cs.transverse_dim(); ++q) ms.dphi0_origin[q] = m0.grad_origin(q);

    ms.m0 = quadrature_moment(V, [](const std::array<double, 3>&) { return 1.0; }, nodes_per_panel);
    ms.m1 = {};
    for (int q = 0; q < cs.transverse_dim(); ++q) {
        const double g = ms.dphi0_origin[q];
        if (g == 0.0) continue;
        ms.m1 += g * quadrature_moment(
                         V, [q](const std::array<double, 3>& t) { return t[q]; }, nodes_per_panel);
    }
    ms.m0_zero_declared = V.mean_zero;
    if (V.mean_zero) ms.m0 = {};

    if (V.separable) {
        const SeparableTag& s = *V.separable;
        ms.has_strip = true;
        ms.m0_strip_zero_declared = s.v_mean_zero;
        const QuadRule r = panel_rule(make_breaks(s.v_lo, s.v_hi, s.v_cuts), nodes_per_panel);
        Complex a0{}, a1{};
        for (int i = 0; i < r.x.size(); ++i) {
            const Complex vi = s.v(r.x[i]);
            a0 += r.w[i] * vi;
            a1 += r.w[i] * r.x[i] * vi;
        }
        ms.m0_strip = s.v_mean_zero ? Complex{} : a0;
        ms.m1_strip = a1;
    }
    return ms;
}

// <phi_0^2 V_h> = h^n int_Q V(xi) phi_0^2(h xi') dxi, by direct quadrature.
inline Complex weighted_moment_exact(const PotentialSpec& V, double h, const CrossSection& cs,
                                     int nodes_per_panel = 32) {
    for (int q = 0; q < cs.transverse_dim(); ++q) {
        if (h * V.support.lo[q] <= cs.lo(q) || h * V.support.hi[q] >= cs.hi(q))
            throw std::domain_error("weighted_moment_exact: scaled support exceeds the cylinder");
    }
    const TransverseMode m0 = mode(cs, 0);
    const int d = cs.transverse_dim();
    const Complex integral = quadrature_moment(
        V,
        [&](const std::array<double, 3>& t) {
            double xp[2] = {h * t[0], d > 1 ? h * t[1] : 0.0};
            const double p = m0.eval(xp);
            return p * p;
        },
        nodes_per_panel);
    return std::pow(h, cs.space_dim()) * integral;
}

// Two-term expansion h^n phi_0^2(0)<V> + 2 h^{n+1} phi_0(0) <Phi_0 V>.
inline Complex weighted_moment_expansion(const MomentSet& ms, double h, const CrossSection& cs) {
    const int n = cs.space_dim();
    return std::pow(h, n) * ms.phi0_origin * ms.phi0_origin * ms.m0 +
           2.0 * std::pow(h, n + 1) * ms.phi0_origin * ms.m1;
}

// |exact - two-term expansion|; decays like h^{n+2}.
inline double expansion_remainder(const PotentialSpec& V, double h, const CrossSection& cs,
                                  int nodes_per_panel = 32) {
    const MomentSet ms = compute_moments(V, cs, nodes_per_panel);
    return std::abs(weighted_moment_exact(V, h, cs, nodes_per_panel) -
                    weighted_moment_expansion(ms, h, cs));
}

}  // namespace wg
