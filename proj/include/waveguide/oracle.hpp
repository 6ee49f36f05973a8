#pragma once

#include "waveguide/cross_section.hpp"
#include "waveguide/potential.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>
#include <vector>

namespace wg {

// Transverse-mode Galerkin reduction of the perturbed operator on the
// truncated cylinder Omega x (-L, L), Dirichlet at x_n = +-L, second-order
// central differences along the axis.
class TruncatedProblem {
public:
    // delta is snapped so the grid hits the longitudinal support edges of the
    // scaled potential; L is snapped to a grid multiple.
    TruncatedProblem(const CrossSection& cs, const ScaledPotential& pot, double half_length,
                     double delta, int j_modes, int transverse_nodes = 48);

    // Unscaled variant: potential field coupling * V(x) on the cylinder.
    TruncatedProblem(const CrossSection& cs, const PotentialSpec& v, Complex coupling,
                     double half_length, double delta, int j_modes, int transverse_nodes = 48);

    double half_length() const { return L_; }
    double delta() const { return delta_; }
    int j_modes() const { return j_; }
    int grid_points() const { return m_; }
    int size() const { return m_ * j_; }
    double z(int i) const { return -L_ + (i + 1) * delta_; }
    double mu(int j) const { return mu_[j]; }
    double mu0() const { return mu_[0]; }

    // Projected potential W_{ij}(z) = h^{-alpha} int phi_i phi_j V(x'/h, z/h) dx'.
    const Eigen::MatrixXcd& coupling(int i) const { return w_[i]; }

    Eigen::SparseMatrix<Complex> assemble(Complex shift = {}) const;

    bool potential_is_real() const { return real_potential_; }

private:
    void init(const CrossSection& cs,
              const std::function<Complex(const std::array<double, 3>&)>& field,
              const SupportBox& support_x, const std::array<std::vector<double>, 3>& cuts_x,
              double half_length, double delta, int transverse_nodes);

    double L_, delta_;
    int j_, m_;
    std::vector<double> mu_;
    std::vector<Eigen::MatrixXcd> w_;  // one j x j block per grid point
    bool real_potential_ = true;
};

struct OracleResult {
    std::optional<Complex> e;     // lowest eigenvalue below mu_0, or none
    double margin = 0.0;          // below-threshold acceptance margin
    double error_estimate = 0.0;  // refinement spread (refine only)
    int iterations = 0;
    double last_change = 0.0;
    Eigen::VectorXcd mode0_profile;  // c_0(z_i) of the converged eigenvector
    std::vector<double> z_grid;
    bool domain_rule_ok = true;   // L >= 15 / Re k_est when an estimate was given
};

// Eigenvalue nearest the shift via shift-invert power iteration.
OracleResult lowest_eigenvalue(const TruncatedProblem& problem, Complex shift,
                               double k_est = 0.0, int max_iter = 500);

// One refinement step: delta/2, L*1.5, J+4, Richardson extrapolation in delta.
OracleResult refine(const CrossSection& cs, const ScaledPotential& pot,
                    const TruncatedProblem& base, Complex shift, double k_est = 0.0);

// Fitted exponential decay rate of |c_0(z)| over the outer half of the grid.
double fitted_decay_rate(const OracleResult& r);

}  // namespace wg
