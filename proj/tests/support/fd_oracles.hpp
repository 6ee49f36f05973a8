// Finite-difference eigenvalue oracles used only by tests, independent of the
// closed-form transverse modes they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wg::testing {

// Lowest `count` Dirichlet eigenvalues of -u'' on (a,b) by second-order central
// differences on N interior points, extracted by Sturm-sequence bisection.
inline std::vector<double> fd_interval_eigenvalues(double a, double b, int n, int count) {
    const double delta = (b - a) / (n + 1);
    const double diag = 2.0 / (delta * delta);
    const double off = -1.0 / (delta * delta);

    auto negatives_below = [&](double lambda) {
        // LDL^T sign count for (T - lambda I).
        int cnt = 0;
        double d = diag - lambda;
        if (d < 0) ++cnt;
        for (int i = 1; i < n; ++i) {
            d = diag - lambda - off * off / d;
            if (d == 0.0) d = 1e-300;
            if (d < 0) ++cnt;
        }
        return cnt;
    };

    std::vector<double> out;
    double lo_all = 0.0, hi_all = diag - 2.0 * off;
    for (int idx = 1; idx <= count; ++idx) {
        double lo = lo_all, hi = hi_all;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (negatives_below(mid) >= idx)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

// Smallest Dirichlet eigenvalue of -Laplace on (a1,b1)x(a2,b2), 2D central
// differences, inverse power iteration.
inline double fd_rectangle_mu0(double a1, double b1, double a2, double b2, int n) {
    const double d1 = (b1 - a1) / (n + 1), d2 = (b2 - a2) / (n + 1);
    const int N = n * n;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * N);
    auto id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            trip.emplace_back(id(i, j), id(i, j), 2.0 / (d1 * d1) + 2.0 / (d2 * d2));
            if (i > 0) trip.emplace_back(id(i, j), id(i - 1, j), -1.0 / (d1 * d1));
            if (i + 1 < n) trip.emplace_back(id(i, j), id(i + 1, j), -1.0 / (d1 * d1));
            if (j > 0) trip.emplace_back(id(i, j), id(i, j - 1), -1.0 / (d2 * d2));
            if (j + 1 < n) trip.emplace_back(id(i, j), id(i, j + 1), -1.0 / (d2 * d2));
        }
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("fd_rectangle_mu0: LU failed");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(N).normalized();
    double lam = 0.0, prev = 1e30;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd y = lu.solve(x);
        lam = x.dot(y);
        x = y.normalized();
        if (std::abs(1.0 / lam - prev) < 1e-13) break;
        prev = 1.0 / lam;
    }
    return 1.0 / lam;
}

// Same with Richardson extrapolation over grids n and 2n (delta^2 stencil).
inline double fd_rectangle_mu0_extrap(double a1, double b1, double a2, double b2, int n) {
    const double c = fd_rectangle_mu0(a1, b1, a2, b2, n);
    const double f = fd_rectangle_mu0(a1, b1, a2, b2, 2 * n + 1);
    // grid spacings: (b-a)/(n+1) and (b-a)/(2n+2) -> exact factor 2.
    return (4.0 * f - c) / 3.0;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
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

}  // namespace wg::testing
