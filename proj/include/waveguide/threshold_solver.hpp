#pragma once

#include "waveguide/cross_section.hpp"
#include "waveguide/potential.hpp"
#include "waveguide/verdict.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace wg {

struct DiscretizationConfig {
    int j_max = 60;            // transverse modes kept in the mode sum
    int nodes_per_panel = 24;  // Gauss-Legendre nodes per panel per axis on hQ
    int series_order = 0;      // 0: direct solve of (I + eps T); N >= 1: Neumann series, N terms
    double tol_k = 0.0;        // 0: 1e-14 * max(1, |k0|)
    double tol_sign = 0.0;     // 0: max(10 tol_k, 1e-12)
    int max_iter = 80;
};

struct FEvaluation {
    Complex value{};
    std::vector<Complex> series_terms;  // populated in series mode
    bool series_mode = false;
};

struct ThresholdSolution {
    Complex k{};
    Verdict verdict = Verdict::indeterminate;
    std::optional<Complex> e;  // mu_0 - k^2 when the eigenvalue exists
    int iterations = 0;
    double residual = 0.0;     // |2k + eps F(k)| at return
    std::string solve_mode;    // "direct" or "series"
    double mode_tail_estimate = 0.0;
    double eps = 0.0;
};

// Nystrom solver for the scalar threshold equation 2k + eps(h) F_eps(k) = 0.
//
// The quadrature grid is the tensor Gauss-Legendre grid on the scaled support
// hQ, panels aligned with the potential's declared discontinuity lines. The
// axial integrals carry product integration split at the target node, so the
// |x_n - t_n| kink of the mode-sum kernels does not degrade the accuracy.
class ThresholdSolver {
public:
    ThresholdSolver(const CrossSection& cs, const ScaledPotential& pot,
                    DiscretizationConfig cfg = {});

    const CrossSection& cross_section() const { return cs_; }
    const ScaledPotential& potential() const { return pot_; }
    const DiscretizationConfig& config() const { return cfg_; }

    // Grid layout: node m = a * axial_size() + c, transverse-major.
    int grid_size() const { return static_cast<int>(weights_.size()); }
    int axial_size() const { return static_cast<int>(z_nodes_.size()); }
    int transverse_size() const { return static_cast<int>(wt_.size()); }
    std::array<double, 3> node(int m) const;
    const Eigen::VectorXd& weights() const { return weights_; }  // full tensor weights
    double mu(int j) const { return mu_[j]; }
    Complex dispersion(int j, Complex k) const;  // K_j(k)

    Eigen::VectorXcd sample(const std::function<Complex(const std::array<double, 3>&)>& f) const;

    // Discrete regularized resolvent R~_D(k) acting on grid values.
    Eigen::MatrixXcd rtilde_matrix(Complex k) const;
    Eigen::VectorXcd apply_R_tilde(const Eigen::VectorXcd& g, Complex k) const;
    // Full A(k) = R~_D(k) + rank-one (phi_0(x')/2k) <g phi_0>; needs k != 0.
    Eigen::VectorXcd apply_A(const Eigen::VectorXcd& g, Complex k) const;
    // T_eps(k) g = beta_n^{-1}(h) V_h R~_D(k) g.
    Eigen::VectorXcd apply_T(const Eigen::VectorXcd& g, Complex k) const;

    // Single mode-j term of R~_D(k) g (j = 0 carries the rank-one subtraction).
    Eigen::VectorXcd mode_component_R(const Eigen::VectorXcd& g, Complex k, int j) const;

    FEvaluation f_eps(Complex k) const;
    ThresholdSolution solve() const;

    double last_mode_tail() const { return tail_estimate_; }

private:
    Eigen::MatrixXcd axial_kernel_matrix(Complex k, int j) const;  // E_j, 1/(2K_j) included
    Eigen::VectorXcd lphi() const;        // L_eps phi_0 = beta^{-1} V(x/h) phi_0 at nodes
    Eigen::MatrixXcd t_matrix(Complex k) const;

    CrossSection cs_;
    ScaledPotential pot_;
    DiscretizationConfig cfg_;

    struct ZPanel {
        double a, b;
        int i0;  // first global axial index
    };
    std::vector<ZPanel> z_panels_;
    Eigen::VectorXd z_nodes_, z_weights_;
    // Transverse grid, flattened over the (n-1) axes.
    Eigen::MatrixXd t_nodes_;  // transverse_size x (n-1)
    Eigen::VectorXd wt_;
    Eigen::MatrixXd phi_;      // (j_max+1) x transverse_size
    std::vector<double> mu_;
    Eigen::VectorXd phi0_grid_;   // phi_0(x') per grid node
    Eigen::VectorXd weights_;     // full tensor weight per grid node
    Eigen::VectorXcd profile_;    // V(x/h) per grid node (no h^{-alpha})
    mutable double tail_estimate_ = 0.0;
};

}  // namespace wg
