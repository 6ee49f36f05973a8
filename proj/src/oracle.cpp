#include "waveguide/oracle.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace wg {

TruncatedProblem::TruncatedProblem(const CrossSection& cs, const ScaledPotential& pot,
                                   double half_length, double delta, int j_modes,
                                   int transverse_nodes)
    : j_(j_modes) {
    const double h = pot.h;
    SupportBox box;
    std::array<std::vector<double>, 3> cuts;
    for (int a = 0; a < cs.space_dim(); ++a) {
        box.lo[a] = h * pot.base.support.lo[a];
        box.hi[a] = h * pot.base.support.hi[a];
        for (double c : pot.base.cuts[a]) cuts[a].push_back(h * c);
    }
    init(
        cs, [pot](const std::array<double, 3>& x) { return pot(x); }, box, cuts, half_length,
        delta, transverse_nodes);
}

TruncatedProblem::TruncatedProblem(const CrossSection& cs, const PotentialSpec& v,
                                   Complex coupling, double half_length, double delta,
                                   int j_modes, int transverse_nodes)
    : j_(j_modes) {
    init(
        cs, [v, coupling](const std::array<double, 3>& x) { return coupling * v(x); },
        v.support, v.cuts, half_length, delta, transverse_nodes);
}

void TruncatedProblem::init(const CrossSection& cs,
                            const std::function<Complex(const std::array<double, 3>&)>& field,
                            const SupportBox& box,
                            const std::array<std::vector<double>, 3>& cuts_x,
                            double half_length, double delta, int transverse_nodes) {
    if (!(half_length > 0.0 && delta > 0.0 && j_ >= 1))
        throw std::invalid_argument("TruncatedProblem: need L > 0, delta > 0, J >= 1");

    const int n = cs.space_dim();
    const int d = cs.transverse_dim();
    const double z_edge = std::max(std::abs(box.lo[n - 1]), std::abs(box.hi[n - 1]));
    if (z_edge >= half_length)
        throw std::domain_error("TruncatedProblem: potential support exceeds the truncation");

    // Snap delta so the support edge is a grid point, then L to a grid multiple.
    delta_ = z_edge > 0.0 ? z_edge / std::ceil(z_edge / delta) : delta;
    L_ = delta_ * std::ceil(half_length / delta_);
    m_ = static_cast<int>(std::lround(2.0 * L_ / delta_)) - 1;

    mu_.resize(j_);
    for (int j = 0; j < j_; ++j) mu_[j] = mode(cs, j).mu();

    // Transverse quadrature over the support, panels at the declared cuts.
    std::array<QuadRule, 2> rules;
    for (int q = 0; q < d; ++q)
        rules[q] = panel_rule(make_breaks(box.lo[q], box.hi[q], cuts_x[q]), transverse_nodes);
    const int n0 = static_cast<int>(rules[0].x.size());
    const int n1 = d > 1 ? static_cast<int>(rules[1].x.size()) : 1;
    const int nq = n0 * n1;

    Eigen::MatrixXd phi(j_, nq);
    Eigen::VectorXd wq(nq);
    Eigen::MatrixXd xq(nq, 2);
    std::vector<TransverseMode> modes;
    for (int j = 0; j < j_; ++j) modes.push_back(mode(cs, j));
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1) {
            const int a = i0 * n1 + i1;
            double xp[2] = {rules[0].x[i0], d > 1 ? rules[1].x[i1] : 0.0};
            xq(a, 0) = xp[0];
            xq(a, 1) = xp[1];
            wq[a] = rules[0].w[i0] * (d > 1 ? rules[1].w[i1] : 1.0);
            for (int j = 0; j < j_; ++j) phi(j, a) = modes[j].eval(xp);
        }

    // Potential value at (x', z), averaged across the longitudinal jump so
    // grid points sitting exactly on a discontinuity take the midpoint value.
    const double tau = 1e-9 * delta_;
    auto value = [&](int a, double zz) {
        std::array<double, 3> x{};
        x[0] = xq(a, 0);
        if (d > 1) x[1] = xq(a, 1);
        x[n - 1] = zz;
        return field(x);
    };

    w_.assign(m_, Eigen::MatrixXcd::Zero(j_, j_));
    for (int i = 0; i < m_; ++i) {
        const double zi = z(i);
        Eigen::VectorXcd vals(nq);
        bool nonzero = false;
        for (int a = 0; a < nq; ++a) {
            vals[a] = 0.5 * (value(a, zi - tau) + value(a, zi + tau));
            if (vals[a] != Complex{}) nonzero = true;
            if (vals[a].imag() != 0.0) real_potential_ = false;
        }
        if (!nonzero) continue;
        Eigen::MatrixXcd& W = w_[i];
        for (int a = 0; a < nq; ++a) {
            const Complex c = wq[a] * vals[a];
            for (int p = 0; p < j_; ++p)
                for (int q = 0; q <= p; ++q) W(p, q) += c * phi(p, a) * phi(q, a);
        }
        for (int p = 0; p < j_; ++p)
            for (int q = p + 1; q < j_; ++q) W(p, q) = W(q, p);
    }
}

Eigen::SparseMatrix<Complex> TruncatedProblem::assemble(Complex shift) const {
    const double inv_d2 = 1.0 / (delta_ * delta_);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<size_t>(m_) * (j_ * j_ + 2 * j_));
    for (int i = 0; i < m_; ++i) {
        for (int p = 0; p < j_; ++p) {
            const int row = i * j_ + p;
            trip.emplace_back(row, row, Complex(2.0 * inv_d2 + mu_[p], 0.0) - shift);
            if (i > 0) trip.emplace_back(row, (i - 1) * j_ + p, Complex(-inv_d2, 0.0));
            if (i + 1 < m_) trip.emplace_back(row, (i + 1) * j_ + p, Complex(-inv_d2, 0.0));
            const Eigen::MatrixXcd& W = w_[i];
            if (W.isZero(0.0)) continue;
            for (int q = 0; q < j_; ++q)
                if (W(p, q) != Complex{}) trip.emplace_back(row, i * j_ + q, W(p, q));
        }
    }
    Eigen::SparseMatrix<Complex> A(size(), size());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

OracleResult lowest_eigenvalue(const TruncatedProblem& problem, Complex shift, double k_est,
                               int max_iter) {
    OracleResult res;
    const int N = problem.size();
    const int J = problem.j_modes();
    const int M = problem.grid_points();

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    Complex sigma = shift;
    for (int attempt = 0;; ++attempt) {
        Eigen::SparseMatrix<Complex> A = problem.assemble(sigma);
        A.makeCompressed();
        lu.compute(A);
        if (lu.info() == Eigen::Success) break;
        if (attempt >= 3)
            throw std::runtime_error("lowest_eigenvalue: factorization failed repeatedly");
        sigma += Complex(1e-8 * (attempt + 1) * problem.mu0(), 0.0);
    }

    // Deterministic start concentrated in mode 0 near the center.
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
    for (int i = 0; i < M; ++i) x[i * J] = std::exp(-std::abs(problem.z(i)));
    x.normalize();

    Complex lam_prev{1e30, 0.0};
    Complex lam{};
    int it = 0;
    double change = 0.0;
    for (; it < max_iter; ++it) {
        Eigen::VectorXcd y = lu.solve(x);
        if (!y.allFinite()) throw std::runtime_error("lowest_eigenvalue: inverse iteration blew up");
        const Complex rho = x.dot(y);  // conjugate dot; ||x|| = 1
        lam = sigma + 1.0 / rho;
        x = y / y.norm();
        change = std::abs(lam - lam_prev);
        lam_prev = lam;
        if (it > 1 && change < 1e-12 * problem.mu0()) break;
    }
    if (it == max_iter)
        throw std::runtime_error("lowest_eigenvalue: inverse iteration did not converge");

    res.iterations = it;
    res.last_change = change;
    res.margin = std::max(10.0 * change, 1e-9);
    res.mode0_profile.resize(M);
    res.z_grid.resize(M);
    for (int i = 0; i < M; ++i) {
        res.mode0_profile[i] = x[i * J];
        res.z_grid[i] = problem.z(i);
    }
    if (lam.real() < problem.mu0() - res.margin) res.e = lam;
    if (k_est > 0.0) res.domain_rule_ok = problem.half_length() >= 15.0 / k_est;
    return res;
}

OracleResult refine(const CrossSection& cs, const ScaledPotential& pot,
                    const TruncatedProblem& base, Complex shift, double k_est) {
    const double L = 1.5 * base.half_length();
    const int J = base.j_modes() + 4;
    TruncatedProblem coarse(cs, pot, L, base.delta(), J);
    TruncatedProblem fine(cs, pot, L, base.delta() / 2.0, J);
    OracleResult rc = lowest_eigenvalue(coarse, shift, k_est);
    OracleResult rf = lowest_eigenvalue(fine, shift, k_est);
    if (!rc.e || !rf.e) {
        rf.error_estimate = 0.0;
        return rf;
    }
    // Second-order stencil: delta^2 extrapolation.
    const Complex extrap = (4.0 * *rf.e - *rc.e) / 3.0;
    OracleResult out = rf;
    out.error_estimate = std::abs(extrap - *rf.e);
    out.margin = std::max(10.0 * out.error_estimate, rf.margin);
    out.e = extrap;
    if (extrap.real() >= base.mu0() - out.margin) out.e.reset();
    return out;
}

double fitted_decay_rate(const OracleResult& r) {
    // Least-squares slope of ln|c_0| vs |z| over 0.35 L < z < 0.9 L.
    const int M = static_cast<int>(r.z_grid.size());
    const double L = std::abs(r.z_grid.front());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = 0; i < M; ++i) {
        const double az = std::abs(r.z_grid[i]);
        const double mag = std::abs(r.mode0_profile[i]);
        if (az < 0.35 * L || az > 0.9 * L || mag <= 0.0) continue;
        const double x = az, y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return -slope;
}

}  // namespace wg
