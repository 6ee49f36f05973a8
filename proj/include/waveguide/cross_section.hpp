#pragma once

#include "waveguide/quadrature.hpp"

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace wg {

using Complex = std::complex<double>;

// Cross-section of the cylinder: an interval (n = 2) or a rectangle (n = 3),
// both containing the transverse origin strictly inside.
class CrossSection {
public:
    static CrossSection interval(double lo, double hi) {
        CrossSection cs;
        cs.n_ = 2;
        cs.lo_ = {lo, 0.0};
        cs.hi_ = {hi, 0.0};
        cs.validate();
        return cs;
    }

    static CrossSection rectangle(double lo1, double hi1, double lo2, double hi2) {
        CrossSection cs;
        cs.n_ = 3;
        cs.lo_ = {lo1, lo2};
        cs.hi_ = {hi1, hi2};
        cs.validate();
        return cs;
    }

    int space_dim() const { return n_; }
    int transverse_dim() const { return n_ - 1; }
    double lo(int q) const { return lo_[q]; }
    double hi(int q) const { return hi_[q]; }
    double length(int q) const { return hi_[q] - lo_[q]; }

private:
    void validate() const {
        for (int q = 0; q < n_ - 1; ++q) {
            if (!(lo_[q] < 0.0 && 0.0 < hi_[q]))
                throw std::invalid_argument("CrossSection: transverse origin must lie strictly inside");
        }
    }

    int n_ = 2;
    std::array<double, 2> lo_{}, hi_{};
};

// One Dirichlet eigenpair of the cross-section, in closed form.
// Interval factor: phi_m(s) = sqrt(2/L) sin(m pi (s - lo)/L), mu_m = (m pi/L)^2.
class TransverseMode {
public:
    TransverseMode(const CrossSection& cs, int index, std::array<int, 2> m)
        : cs_(cs), index_(index), m_(m) {
        mu_ = 0.0;
        for (int q = 0; q < cs_.transverse_dim(); ++q) {
            const double kq = m_[q] * M_PI / cs_.length(q);
            mu_ += kq * kq;
        }
    }

    int index() const { return index_; }
    double mu() const { return mu_; }

    double eval(const double* xp) const {
        double v = 1.0;
        for (int q = 0; q < cs_.transverse_dim(); ++q) v *= factor(q, xp[q]);
        return v;
    }

    double eval1(double x1) const { return eval(&x1); }

    double at_origin() const {
        double z[2] = {0.0, 0.0};
        return eval(z);
    }

    // d phi / d xi_q at the transverse origin.
    double grad_origin(int q) const {
        double v = 1.0;
        for (int p = 0; p < cs_.transverse_dim(); ++p)
            v *= (p == q) ? dfactor(p, 0.0) : factor(p, 0.0);
        return v;
    }

private:
    double factor(int q, double s) const {
        const double L = cs_.length(q);
        return std::sqrt(2.0 / L) * std::sin(m_[q] * M_PI * (s - cs_.lo(q)) / L);
    }
    double dfactor(int q, double s) const {
        const double L = cs_.length(q);
        const double kq = m_[q] * M_PI / L;
        return std::sqrt(2.0 / L) * kq * std::cos(kq * (s - cs_.lo(q)));
    }

    CrossSection cs_;
    int index_;
    std::array<int, 2> m_;
    double mu_;
};

// j-th Dirichlet eigenpair in nondecreasing-mu order; ties broken by
// lexicographic (m1, m2).
inline TransverseMode mode(const CrossSection& cs, int j) {
    if (j < 0) throw std::invalid_argument("mode: j < 0");
    if (cs.transverse_dim() == 1) return TransverseMode(cs, j, {j + 1, 1});

    const double L1 = cs.length(0), L2 = cs.length(1);
    for (int M = 8;; M *= 2) {
        std::vector<std::array<int, 2>> cand;
        cand.reserve(M * M);
        for (int m1 = 1; m1 <= M; ++m1)
            for (int m2 = 1; m2 <= M; ++m2) cand.push_back({m1, m2});
        auto mu_of = [&](const std::array<int, 2>& m) {
            const double a = m[0] * M_PI / L1, b = m[1] * M_PI / L2;
            return a * a + b * b;
        };
        std::sort(cand.begin(), cand.end(), [&](const auto& u, const auto& v) {
            const double mu = mu_of(u), mv = mu_of(v);
            if (mu != mv) return mu < mv;
            return u < v;
        });
        // All eigenvalues below this cap are present among the candidates.
        const double c1 = (M + 1) * M_PI / L1, c2 = (M + 1) * M_PI / L2;
        const double cap = std::min(c1 * c1, c2 * c2);
        if (j < static_cast<int>(cand.size()) && mu_of(cand[j]) < cap)
            return TransverseMode(cs, j, cand[j]);
    }
}

inline double threshold_mu0(const CrossSection& cs) { return mode(cs, 0).mu(); }

// Longitudinal dispersion K_j(k) = sqrt(mu_j - mu_0 + k^2); K_0(k) = k.
// Branch: principal square root, Re K_j > 0 for j >= 1 and small |k|.
inline Complex kj(const CrossSection& cs, int j, Complex k) {
    if (j == 0) {
        if (k == Complex(0.0, 0.0))
            throw std::domain_error("kj: singular argument j = 0, k = 0");
        return k;
    }
    const double gap = mode(cs, j).mu() - threshold_mu0(cs);
    return std::sqrt(Complex(gap, 0.0) + k * k);
}

}  // namespace wg
