#include "waveguide/threshold_solver.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace wg {

namespace {

// expm1(-k d) / (2k), stable for small |k d| and exact in the k -> 0 limit (-d/2).
Complex regularized_kernel(Complex k, double d) {
    const Complex x = k * d;
    if (std::abs(x) < 1e-4) {
        // (-d/2) (1 - x/2 + x^2/6 - x^3/24 + x^4/120)
        return -0.5 * d * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0 + x * x * x * x / 120.0);
    }
    return (std::exp(-x) - 1.0) / (2.0 * k);
}

}  // namespace

ThresholdSolver::ThresholdSolver(const CrossSection& cs, const ScaledPotential& pot,
                                 DiscretizationConfig cfg)
    : cs_(cs), pot_(pot), cfg_(cfg) {
    if (cfg_.j_max < 1) throw std::invalid_argument("DiscretizationConfig: j_max >= 1 required");
    if (cfg_.nodes_per_panel < 2)
        throw std::invalid_argument("DiscretizationConfig: nodes_per_panel >= 2 required");

    const int n = cs_.space_dim();
    const double h = pot_.h;
    const SupportBox& box = pot_.base.support;

    // Axial axis (index n-1): panels from the scaled support split at the cuts.
    {
        std::vector<double> cuts;
        for (double c : pot_.base.cuts[n - 1]) cuts.push_back(h * c);
        const auto breaks = make_breaks(h * box.lo[n - 1], h * box.hi[n - 1], cuts);
        const int P = cfg_.nodes_per_panel;
        QuadRule rule = panel_rule(breaks, P);
        z_nodes_ = rule.x;
        z_weights_ = rule.w;
        for (size_t p = 0; p + 1 < breaks.size(); ++p)
            z_panels_.push_back({breaks[p], breaks[p + 1], static_cast<int>(p) * P});
    }

    // Transverse axes.
    std::array<QuadRule, 2> trules;
    const int d = cs_.transverse_dim();
    for (int q = 0; q < d; ++q) {
        std::vector<double> cuts;
        for (double c : pot_.base.cuts[q]) cuts.push_back(h * c);
        trules[q] = panel_rule(make_breaks(h * box.lo[q], h * box.hi[q], cuts),
                               cfg_.nodes_per_panel);
    }
    const int n0 = static_cast<int>(trules[0].x.size());
    const int n1 = d > 1 ? static_cast<int>(trules[1].x.size()) : 1;
    t_nodes_.resize(n0 * n1, d);
    wt_.resize(n0 * n1);
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1) {
            const int a = i0 * n1 + i1;
            t_nodes_(a, 0) = trules[0].x[i0];
            double w = trules[0].w[i0];
            if (d > 1) {
                t_nodes_(a, 1) = trules[1].x[i1];
                w *= trules[1].w[i1];
            }
            wt_[a] = w;
        }

    // Transverse eigenpairs at the grid nodes.
    phi_.resize(cfg_.j_max + 1, t_nodes_.rows());
    mu_.resize(cfg_.j_max + 1);
    for (int j = 0; j <= cfg_.j_max; ++j) {
        const TransverseMode md = mode(cs_, j);
        mu_[j] = md.mu();
        for (int a = 0; a < t_nodes_.rows(); ++a) {
            double xp[2] = {t_nodes_(a, 0), d > 1 ? t_nodes_(a, 1) : 0.0};
            phi_(j, a) = md.eval(xp);
        }
    }

    const int nz = axial_size();
    weights_.resize(t_nodes_.rows() * nz);
    phi0_grid_.resize(weights_.size());
    profile_.resize(weights_.size());
    for (int a = 0; a < t_nodes_.rows(); ++a)
        for (int c = 0; c < nz; ++c) {
            const int m = a * nz + c;
            weights_[m] = wt_[a] * z_weights_[c];
            phi0_grid_[m] = phi_(0, a);
            profile_[m] = pot_.profile_at(node(m));
        }
}

std::array<double, 3> ThresholdSolver::node(int m) const {
    const int nz = axial_size();
    const int a = m / nz, c = m % nz;
    std::array<double, 3> x{};
    x[0] = t_nodes_(a, 0);
    if (cs_.transverse_dim() > 1) x[1] = t_nodes_(a, 1);
    x[cs_.space_dim() - 1] = z_nodes_[c];
    return x;
}

Complex ThresholdSolver::dispersion(int j, Complex k) const {
    if (j == 0) return k;
    return std::sqrt(Complex(mu_[j] - mu_[0], 0.0) + k * k);
}

Eigen::VectorXcd ThresholdSolver::sample(
    const std::function<Complex(const std::array<double, 3>&)>& f) const {
    Eigen::VectorXcd g(grid_size());
    for (int m = 0; m < grid_size(); ++m) g[m] = f(node(m));
    return g;
}

// Product-integration matrix for the axial kernel of mode j:
//   j = 0:  (exp(-k|z-t|) - 1) / (2k)      (regularized resolvent)
//   j >= 1: exp(-K_j|z-t|) / (2 K_j)
// Row c approximates int kernel(|z_c - t|) g(t) dt from the panel values of g.
Eigen::MatrixXcd ThresholdSolver::axial_kernel_matrix(Complex k, int j) const {
    const int nz = axial_size();
    const int P = cfg_.nodes_per_panel;
    static thread_local std::unique_ptr<PanelBasis> basis;
    static thread_local int basis_n = -1;
    if (basis_n != P) {
        basis = std::make_unique<PanelBasis>(P);
        basis_n = P;
    }
    const Complex kjv = dispersion(j, k);
    if (j >= 1 && !(kjv.real() > 0.0))
        throw std::domain_error("ThresholdSolver: nonpositive Re K_j, wrong branch");

    const int q_nodes = P + 8;
    const QuadRule& sub = gauss_legendre(q_nodes);
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(nz, nz);
    Eigen::VectorXd basis_vals;
    for (int c = 0; c < nz; ++c) {
        const double zc = z_nodes_[c];
        for (const ZPanel& pan : z_panels_) {
            double splits[3] = {pan.a, pan.b, pan.b};
            int nsub = 1;
            if (zc > pan.a + 1e-14 && zc < pan.b - 1e-14) {
                splits[1] = zc;
                splits[2] = pan.b;
                nsub = 2;
            }
            for (int s = 0; s < nsub; ++s) {
                const double u = splits[s], v = splits[s + 1];
                const double mid = 0.5 * (u + v), half = 0.5 * (v - u);
                for (int q = 0; q < q_nodes; ++q) {
                    const double t = mid + half * sub.x[q];
                    const double w = half * sub.w[q];
                    const double ref = 2.0 * (t - pan.a) / (pan.b - pan.a) - 1.0;
                    basis->eval(ref, basis_vals);
                    const double dist = std::abs(zc - t);
                    const Complex kval = (j == 0)
                                             ? regularized_kernel(k, dist)
                                             : std::exp(-kjv * dist) / (2.0 * kjv);
                    for (int b = 0; b < P; ++b)
                        E(c, pan.i0 + b) += w * kval * basis_vals[b];
                }
            }
        }
    }
    return E;
}

Eigen::MatrixXcd ThresholdSolver::rtilde_matrix(Complex k) const {
    const int nt = transverse_size(), nz = axial_size();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(nt * nz, nt * nz);
    double tail = 0.0;
    for (int j = 0; j <= cfg_.j_max; ++j) {
        const Eigen::MatrixXcd E = axial_kernel_matrix(k, j);
        // S_j(a1, a2) = phi_j(a1) phi_j(a2) wt(a2)
        Eigen::MatrixXd S = phi_.row(j).transpose() * (phi_.row(j).array() * wt_.transpose().array()).matrix();
        for (int a1 = 0; a1 < nt; ++a1)
            for (int a2 = 0; a2 < nt; ++a2)
                R.block(a1 * nz, a2 * nz, nz, nz) += S(a1, a2) * E;
        if (j == cfg_.j_max)
            tail = S.cwiseAbs().maxCoeff() * E.cwiseAbs().maxCoeff();
    }
    tail_estimate_ = tail;
    return R;
}

Eigen::VectorXcd ThresholdSolver::apply_R_tilde(const Eigen::VectorXcd& g, Complex k) const {
    return rtilde_matrix(k) * g;
}

Eigen::VectorXcd ThresholdSolver::mode_component_R(const Eigen::VectorXcd& g, Complex k,
                                                   int j) const {
    const int nt = transverse_size(), nz = axial_size();
    const Eigen::MatrixXcd E = axial_kernel_matrix(k, j);
    Eigen::VectorXcd out(nt * nz);
    // Inner integral over t' of phi_j g, per axial node.
    Eigen::VectorXcd inner = Eigen::VectorXcd::Zero(nz);
    for (int a2 = 0; a2 < nt; ++a2)
        inner += phi_(j, a2) * wt_[a2] * g.segment(a2 * nz, nz);
    const Eigen::VectorXcd axial = E * inner;
    for (int a1 = 0; a1 < nt; ++a1)
        out.segment(a1 * nz, nz) = phi_(j, a1) * axial;
    return out;
}

Eigen::VectorXcd ThresholdSolver::apply_A(const Eigen::VectorXcd& g, Complex k) const {
    if (k == Complex(0.0, 0.0)) throw std::domain_error("apply_A: singular at k = 0");
    Eigen::VectorXcd out = apply_R_tilde(g, k);
    // Add back the rank-one part (phi_0(x')/2k) <g phi_0>.
    Complex mass{};
    for (int m = 0; m < grid_size(); ++m) mass += weights_[m] * phi0_grid_[m] * g[m];
    out += (mass / (2.0 * k)) * phi0_grid_.cast<Complex>();
    return out;
}

Eigen::VectorXcd ThresholdSolver::lphi() const {
    const double beta = beta_n(pot_.h, cs_.space_dim());
    Eigen::VectorXcd v(grid_size());
    for (int m = 0; m < grid_size(); ++m) v[m] = profile_[m] * phi0_grid_[m] / beta;
    return v;
}

Eigen::MatrixXcd ThresholdSolver::t_matrix(Complex k) const {
    const double beta = beta_n(pot_.h, cs_.space_dim());
    Eigen::MatrixXcd T = rtilde_matrix(k);
    for (int m = 0; m < grid_size(); ++m) T.row(m) *= profile_[m] / beta;
    return T;
}

Eigen::VectorXcd ThresholdSolver::apply_T(const Eigen::VectorXcd& g, Complex k) const {
    const double beta = beta_n(pot_.h, cs_.space_dim());
    Eigen::VectorXcd r = apply_R_tilde(g, k);
    for (int m = 0; m < grid_size(); ++m) r[m] *= profile_[m] / beta;
    return r;
}

FEvaluation ThresholdSolver::f_eps(Complex k) const {
    FEvaluation out;
    const Eigen::VectorXcd L = lphi();
    const Eigen::VectorXcd wphi0 =
        (weights_.array() * phi0_grid_.array()).matrix().cast<Complex>();
    const double eps = coupling_eps(pot_.h, pot_.alpha, cs_.space_dim());

    if (cfg_.series_order > 0) {
        out.series_mode = true;
        const Eigen::MatrixXcd T = t_matrix(k);
        Eigen::VectorXcd y = L;
        Complex sum{};
        double sgn = 1.0;
        double epsj = 1.0;
        for (int j = 0; j < cfg_.series_order; ++j) {
            if (j > 0) {
                y = T * y;
                sgn = -sgn;
                epsj *= eps;
            }
            const Complex term = sgn * epsj * (wphi0.transpose() * y)(0);
            out.series_terms.push_back(term);
            if (j >= 2 && std::abs(term) > std::abs(out.series_terms[j - 1]))
                throw std::runtime_error(
                    "f_eps: Neumann series terms not decaying; use direct mode");
            sum += term;
        }
        out.value = sum;
        return out;
    }

    const Eigen::MatrixXcd T = t_matrix(k);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(grid_size(), grid_size()) + eps * T;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const Eigen::VectorXcd c = lu.solve(L);
    if (!c.allFinite()) throw std::runtime_error("f_eps: singular linear system (I + eps T)");
    out.value = (wphi0.transpose() * c)(0);
    return out;
}

ThresholdSolution ThresholdSolver::solve() const {
    ThresholdSolution sol;
    const int n = cs_.space_dim();
    const double eps = coupling_eps(pot_.h, pot_.alpha, n);
    sol.eps = eps;
    sol.solve_mode = cfg_.series_order > 0 ? "series" : "direct";

    if (profile_.cwiseAbs().maxCoeff() == 0.0) {
        sol.k = {};
        sol.verdict = Verdict::indeterminate;
        sol.residual = 0.0;
        return sol;
    }

    auto G = [&](Complex k) { return 2.0 * k + eps * f_eps(k).value; };

    // Initial guess consistent with the two-term expansion: k0 = -eps F(k*)/2
    // evaluated at k* = h^{n-alpha}.
    const Complex kstar = std::pow(pot_.h, n - pot_.alpha);
    Complex k0 = -0.5 * eps * f_eps(kstar).value;
    const double tol_k = cfg_.tol_k > 0.0 ? cfg_.tol_k : 1e-14 * std::max(1.0, std::abs(k0));
    const double tol_sign = cfg_.tol_sign > 0.0 ? cfg_.tol_sign : std::max(10.0 * tol_k, 1e-12);

    Complex ka = k0;
    Complex kb = (std::abs(k0) > 1e-300) ? k0 * Complex(1.001, 0.0) : Complex(1e-10, 0.0);
    Complex ga = G(ka), gb = G(kb);
    Complex k = kb, g = gb;
    int it = 0;
    for (; it < cfg_.max_iter; ++it) {
        if (std::abs(g) < tol_k) break;
        Complex knext;
        if (std::abs(gb - ga) > 1e-300 * std::max(std::abs(ga), 1.0)) {
            knext = kb - gb * (kb - ka) / (gb - ga);
        } else {
            // Damped fixed point k <- -eps F(k)/2.
            knext = 0.5 * (kb + (-0.5 * eps * f_eps(kb).value));
        }
        ka = kb;
        ga = gb;
        kb = knext;
        gb = G(kb);
        k = kb;
        g = gb;
    }
    if (std::abs(g) >= tol_k && it == cfg_.max_iter)
        throw std::runtime_error("solve_k: root iteration did not converge, |G| = " +
                                 std::to_string(std::abs(g)));

    sol.k = k;
    sol.iterations = it;
    sol.residual = std::abs(g);
    sol.mode_tail_estimate = tail_estimate_;
    if (k.real() > tol_sign) {
        sol.verdict = Verdict::exists;
        sol.e = mu_[0] - k * k;
    } else if (k.real() < -tol_sign) {
        sol.verdict = Verdict::absent;
    } else {
        sol.verdict = Verdict::indeterminate;
    }
    return sol;
}

}  // namespace wg
