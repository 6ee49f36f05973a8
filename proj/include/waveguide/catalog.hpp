#pragma once

#include "waveguide/potential.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace wg {

// One polynomial piece of a tensor-product potential: p(t) = sum_i c_i t^i on [a, b].
struct PolyPiece {
    double a = 0.0, b = 0.0;
    std::vector<double> coeff;

    double eval(double t) const {
        double v = 0.0;
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) v = v * t + *it;
        return v;
    }
};

struct AxisPieces {
    std::vector<PolyPiece> pieces;

    double eval(double t) const {
        for (const auto& p : pieces)
            if (t >= p.a && t <= p.b) return p.eval(t);
        return 0.0;
    }
    double lo() const { return pieces.front().a; }
    double hi() const { return pieces.back().b; }
    std::vector<double> cuts() const {
        std::vector<double> c;
        for (const auto& p : pieces) {
            c.push_back(p.a);
            c.push_back(p.b);
        }
        return c;
    }
};

// Constant amplitude on the box prod_a [-halfwidth_a, halfwidth_a].
inline PotentialSpec make_box_potential(int n, Complex amplitude,
                                        std::array<double, 3> halfwidth = {0.5, 0.5, 0.5}) {
    PotentialSpec V;
    V.n = n;
    V.id = "box";
    for (int a = 0; a < n; ++a) {
        V.support.lo[a] = -halfwidth[a];
        V.support.hi[a] = halfwidth[a];
    }
    V.eval = [amplitude](const std::array<double, 3>&) { return amplitude; };
    return V;
}

// V(t) = c * t1 on the box [-1/2,1/2]^n; <V> = 0 by oddness (declared).
inline PotentialSpec make_linear_box_potential(int n, Complex amplitude) {
    PotentialSpec V;
    V.n = n;
    V.id = "linear_box";
    for (int a = 0; a < n; ++a) {
        V.support.lo[a] = -0.5;
        V.support.hi[a] = 0.5;
    }
    V.eval = [amplitude](const std::array<double, 3>& t) { return amplitude * t[0]; };
    V.mean_zero = true;
    return V;
}

// Strip potential v(t1) * indicator(|t2| < 1) with the odd profile
// v(t1) = c * t1 on [-1/2, 1/2]; <v>' = 0 by oddness (declared).
inline PotentialSpec make_odd_linear_strip_potential(Complex amplitude) {
    PotentialSpec V;
    V.n = 2;
    V.id = "odd_linear";
    V.support.lo = {-0.5, -1.0, 0.0};
    V.support.hi = {0.5, 1.0, 0.0};
    V.eval = [amplitude](const std::array<double, 3>& t) { return amplitude * t[0]; };
    V.mean_zero = true;
    SeparableTag tag;
    tag.v = [amplitude](double t1) { return amplitude * t1; };
    tag.v_lo = -0.5;
    tag.v_hi = 0.5;
    tag.v_mean_zero = true;
    V.separable = tag;
    return V;
}

// Tensor product of per-axis piecewise polynomials, times a complex amplitude.
inline PotentialSpec make_tensor_potential(int n, Complex amplitude,
                                           std::vector<AxisPieces> axes,
                                           bool mean_zero = false) {
    if (static_cast<int>(axes.size()) != n)
        throw std::invalid_argument("make_tensor_potential: need one AxisPieces per axis");
    PotentialSpec V;
    V.n = n;
    V.id = "tensor";
    for (int a = 0; a < n; ++a) {
        V.support.lo[a] = axes[a].lo();
        V.support.hi[a] = axes[a].hi();
        V.cuts[a] = axes[a].cuts();
    }
    V.eval = [amplitude, axes](const std::array<double, 3>& t) {
        Complex v = amplitude;
        for (size_t a = 0; a < axes.size(); ++a) v *= axes[a].eval(t[a]);
        return v;
    };
    V.mean_zero = mean_zero;
    // Strip tag when the t2 factor is the unit indicator.
    if (n == 2 && axes[1].pieces.size() == 1 && axes[1].pieces[0].a == -1.0 &&
        axes[1].pieces[0].b == 1.0 && axes[1].pieces[0].coeff == std::vector<double>{1.0}) {
        SeparableTag tag;
        AxisPieces ax = axes[0];
        tag.v = [amplitude, ax](double t1) { return amplitude * ax.eval(t1); };
        tag.v_lo = ax.lo();
        tag.v_hi = ax.hi();
        tag.v_cuts = ax.cuts();
        tag.v_mean_zero = mean_zero;
        V.separable = tag;
    }
    return V;
}

// Catalog lookup used by the config layer.
inline PotentialSpec make_catalog_potential(const std::string& name, int n, Complex amplitude,
                                            std::array<double, 3> halfwidth,
                                            const std::vector<AxisPieces>& axes,
                                            bool mean_zero) {
    if (name == "box") return make_box_potential(n, amplitude, halfwidth);
    if (name == "linear_box") return make_linear_box_potential(n, amplitude);
    if (name == "odd_linear") return make_odd_linear_strip_potential(amplitude);
    if (name == "tensor") return make_tensor_potential(n, amplitude, axes, mean_zero);
    if (name == "zero") {
        PotentialSpec V = make_box_potential(n, {0.0, 0.0});
        V.id = "zero";
        return V;
    }
    throw std::invalid_argument("unknown potential '" + name + "'");
}

}  // namespace wg
