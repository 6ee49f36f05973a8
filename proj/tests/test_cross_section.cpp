#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/fd_oracles.hpp"
#include "waveguide/cross_section.hpp"

#include <complex>

using namespace wg;

TEST_CASE("interval mode closed forms") {
    const auto cs = CrossSection::interval(-M_PI / 2.0, M_PI / 2.0);
    const auto m0 = mode(cs, 0);
    CHECK(m0.mu() == doctest::Approx(1.0).epsilon(1e-14));
    // phi_0(x) = sqrt(2/pi) cos(x)
    CHECK(m0.at_origin() == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
    CHECK(m0.eval1(0.7) == doctest::Approx(std::sqrt(2.0 / M_PI) * std::cos(0.7)).epsilon(1e-13));
    CHECK(m0.grad_origin(0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("asymmetric interval phi0 values") {
    const auto cs = CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0);
    const auto m0 = mode(cs, 0);
    CHECK(m0.mu() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m0.at_origin() == doctest::Approx(std::sqrt(2.0 / M_PI) * std::sin(M_PI / 3.0)).epsilon(1e-14));
    CHECK(m0.at_origin() == doctest::Approx(0.69099).epsilon(1e-4));
    CHECK(m0.grad_origin(0) == doctest::Approx(std::sqrt(2.0 / M_PI) * std::cos(M_PI / 3.0)).epsilon(1e-14));
    CHECK(m0.grad_origin(0) == doctest::Approx(0.39894).epsilon(1e-4));
}

TEST_CASE("finite-difference cross-check of interval eigenvalues") {
    const auto cs = CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0);
    const auto fd = wg::testing::fd_interval_eigenvalues(-M_PI / 3.0, 2.0 * M_PI / 3.0, 10000, 6);
    for (int j = 0; j <= 5; ++j) {
        const double mu = mode(cs, j).mu();
        CHECK(std::abs(fd[j] - mu) / mu < 1e-6);
    }
}

TEST_CASE("rectangle mode ordering and values") {
    const auto cs = CrossSection::rectangle(-M_PI / 2.0, M_PI / 2.0, -M_PI / 2.0, M_PI / 2.0);
    const auto m0 = mode(cs, 0);
    CHECK(m0.mu() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m0.at_origin() == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    // nondecreasing eigenvalues
    double prev = 0.0;
    for (int j = 0; j < 20; ++j) {
        const double mu = mode(cs, j).mu();
        CHECK(mu >= prev);
        prev = mu;
    }

    // 2D finite-difference cross-check of mu_0.
    const double fd = wg::testing::fd_rectangle_mu0_extrap(-M_PI / 2.0, M_PI / 2.0,
                                                           -M_PI / 2.0, M_PI / 2.0, 80);
    CHECK(fd == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("orthonormality under Gauss-Legendre quadrature") {
    const auto cs = CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0);
    const QuadRule r = panel_rule({cs.lo(0), cs.hi(0)}, 220);
    for (int j = 0; j <= 20; ++j)
        for (int m = j; m <= 20; ++m) {
            const auto mj = mode(cs, j);
            const auto mm = mode(cs, m);
            double acc = 0.0;
            for (int i = 0; i < r.x.size(); ++i) acc += r.w[i] * mj.eval1(r.x[i]) * mm.eval1(r.x[i]);
            CHECK(std::abs(acc - (j == m ? 1.0 : 0.0)) <= 1e-10);
        }
}

TEST_CASE("phi_j vanishes on the boundary and phi_0 > 0 inside") {
    const auto cs = CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0);
    for (int j = 0; j < 6; ++j) {
        CHECK(std::abs(mode(cs, j).eval1(cs.lo(0))) < 1e-13);
        CHECK(std::abs(mode(cs, j).eval1(cs.hi(0))) < 1e-13);
    }
    const auto m0 = mode(cs, 0);
    for (double s = cs.lo(0) + 1e-3; s < cs.hi(0); s += 0.05) CHECK(m0.eval1(s) > 0.0);
}

TEST_CASE("dispersion K_j examples and branch") {
    const auto cs = CrossSection::interval(-M_PI / 2.0, M_PI / 2.0);
    CHECK(std::abs(kj(cs, 1, {0.0, 0.0}) - Complex(std::sqrt(3.0), 0.0)) < 1e-14);
    CHECK(kj(cs, 0, {0.25, -0.125}) == Complex(0.25, -0.125));
    CHECK_THROWS_AS(kj(cs, 0, {0.0, 0.0}), std::domain_error);
    // sqrt(3 - 0.01) for k = 0.1i
    CHECK(std::abs(kj(cs, 1, {0.0, 0.1}) - Complex(std::sqrt(2.99), 0.0)) < 1e-5);
    CHECK(std::abs(kj(cs, 1, {0.0, 0.1}).real() - 1.7291616) < 1e-6);

    // Re K_j > 0 over a disk |k| <= sqrt(mu_1 - mu_0)/2, sampled on a grid.
    const double rad = 0.5 * std::sqrt(mode(cs, 1).mu() - mode(cs, 0).mu());
    int checked = 0;
    for (int a = -16; a <= 16; ++a)
        for (int b = -16; b <= 16; ++b) {
            const Complex k(rad * a / 16.0, rad * b / 16.0);
            if (std::abs(k) > rad) continue;
            for (int j = 1; j <= 8; ++j) CHECK(kj(cs, j, k).real() > 0.0);
            ++checked;
        }
    CHECK(checked >= 750);  // grid points inside the disk, ~pi * 16^2
}

TEST_CASE("rectangle tie-break is lexicographic") {
    const auto cs = CrossSection::rectangle(-1.0, 1.0, -1.0, 1.0);
    // modes 1 and 2 are the degenerate (1,2)/(2,1) pair
    const auto m1 = mode(cs, 1);
    const auto m2 = mode(cs, 2);
    CHECK(m1.mu() == doctest::Approx(m2.mu()));
    // lexicographic: (1,2) before (2,1); distinguish by gradient direction
    CHECK(std::abs(m1.grad_origin(1)) > std::abs(m1.grad_origin(0)));
    CHECK(std::abs(m2.grad_origin(0)) > std::abs(m2.grad_origin(1)));
}

TEST_CASE("invalid cross-sections are rejected") {
    CHECK_THROWS_AS(CrossSection::interval(0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CrossSection::interval(-1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(CrossSection::rectangle(-1.0, 1.0, 0.2, 1.0), std::invalid_argument);
}
