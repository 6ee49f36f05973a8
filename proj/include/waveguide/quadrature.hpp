#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wg {

// Gauss-Legendre rule; nodes ascending on [-1,1].
struct QuadRule {
    Eigen::VectorXd x;
    Eigen::VectorXd w;
};

inline const QuadRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    static thread_local std::vector<QuadRule> cache;
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    QuadRule& r = cache[n];
    if (r.x.size() == n) return r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z -= p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

// Composite rule over consecutive panels [breaks[i], breaks[i+1]].
inline QuadRule panel_rule(const std::vector<double>& breaks, int nodes_per_panel) {
    if (breaks.size() < 2) throw std::invalid_argument("panel_rule: need >= 2 breakpoints");
    const QuadRule& ref = gauss_legendre(nodes_per_panel);
    const int np = static_cast<int>(breaks.size()) - 1;
    QuadRule r;
    r.x.resize(np * nodes_per_panel);
    r.w.resize(np * nodes_per_panel);
    for (int p = 0; p < np; ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        if (!(b > a)) throw std::invalid_argument("panel_rule: breakpoints not increasing");
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < nodes_per_panel; ++i) {
            r.x[p * nodes_per_panel + i] = mid + half * ref.x[i];
            r.w[p * nodes_per_panel + i] = half * ref.w[i];
        }
    }
    return r;
}

// Sorted deduplicated breakpoints of [lo,hi] split at the given interior lines.
inline std::vector<double> make_breaks(double lo, double hi, const std::vector<double>& cuts) {
    std::vector<double> b{lo, hi};
    for (double c : cuts)
        if (c > lo + 1e-15 && c < hi - 1e-15) b.push_back(c);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double u, double v) { return std::abs(u - v) < 1e-14; }),
            b.end());
    return b;
}

// Lagrange basis on the reference Gauss-Legendre nodes, barycentric form.
class PanelBasis {
public:
    explicit PanelBasis(int n) : nodes_(gauss_legendre(n).x), bary_(n) {
        for (int i = 0; i < n; ++i) {
            double prod = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) prod *= nodes_[i] - nodes_[j];
            bary_[i] = 1.0 / prod;
        }
    }

    // Values of all basis polynomials at reference coordinate t in [-1,1].
    void eval(double t, Eigen::VectorXd& out) const {
        const int n = static_cast<int>(nodes_.size());
        out.resize(n);
        for (int i = 0; i < n; ++i) {
            if (std::abs(t - nodes_[i]) < 1e-14) {
                out.setZero();
                out[i] = 1.0;
                return;
            }
        }
        double denom = 0.0;
        for (int i = 0; i < n; ++i) {
            out[i] = bary_[i] / (t - nodes_[i]);
            denom += out[i];
        }
        out /= denom;
    }

private:
    Eigen::VectorXd nodes_;
    Eigen::VectorXd bary_;
};

}  // namespace wg
