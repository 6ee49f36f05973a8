#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveguide/asymptotics.hpp"
#include "waveguide/catalog.hpp"

#include <cmath>

using namespace wg;

namespace {
const CrossSection kSym = CrossSection::interval(-M_PI / 2.0, M_PI / 2.0);
const CrossSection kAsym = CrossSection::interval(-M_PI / 3.0, 2.0 * M_PI / 3.0);
}

TEST_CASE("main-regime prediction on the symmetric strip") {
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    const MomentSet ms = compute_moments(V, kSym);
    const RegimePrediction p = predict_main(0.1, 0.0, kSym, ms);
    // k = (h^2/2) phi_0^2(0) = 0.005 * 2/pi = 3.18310e-3
    CHECK(p.k.real() == doctest::Approx(3.1830989e-3).epsilon(1e-6));
    CHECK(p.e.real() == doctest::Approx(1.0 - 1.01321e-5).epsilon(1e-9));
    CHECK(p.verdict == Verdict::exists);
    // exact algebraic identity e = mu_0 - k^2
    CHECK(std::abs(p.e - (threshold_mu0(kSym) - p.k * p.k)) == 0.0);
}

TEST_CASE("main-regime sign flips with the potential sign") {
    const MomentSet ms = compute_moments(make_box_potential(2, {1.0, 0.0}), kSym);
    const RegimePrediction p = predict_main(0.1, 0.0, kSym, ms);
    CHECK(p.k.real() < 0.0);
    CHECK(p.verdict == Verdict::absent);
}

TEST_CASE("second term of the main prediction equals the critical prediction") {
    // <V> = 0 fixture: the h^{n+1-alpha} term is all that survives.
    const PotentialSpec V = make_linear_box_potential(2, {-1.0, 0.0});
    const MomentSet ms = compute_moments(V, kAsym);
    const double h = 0.07, alpha = -0.5;
    const RegimePrediction pm = predict_main(h, alpha, kAsym, ms);
    const RegimePrediction pc = predict_critical(h, alpha, kAsym, ms);
    CHECK(std::abs(pm.k - pc.k) <= 1e-15 * std::abs(pc.k));
}

TEST_CASE("critical prediction requires alpha < 0 and vanishing mean") {
    const MomentSet ms_box = compute_moments(make_box_potential(2, {-1.0, 0.0}), kAsym);
    CHECK_THROWS_AS((void)predict_critical(0.1, -1.0, kAsym, ms_box), std::domain_error);
    const MomentSet ms_lin = compute_moments(make_linear_box_potential(2, {-1.0, 0.0}), kAsym);
    CHECK_THROWS_AS((void)predict_critical(0.1, 0.5, kAsym, ms_lin), std::domain_error);
    CHECK_NOTHROW((void)predict_critical(0.1, -1.0, kAsym, ms_lin));
}

TEST_CASE("critical prediction value and sign rule") {
    const PotentialSpec V = make_linear_box_potential(2, {-1.0, 0.0});
    const MomentSet ms = compute_moments(V, kAsym);
    const double h = 0.1, alpha = -1.0;
    const RegimePrediction p = predict_critical(h, alpha, kAsym, ms);
    // k = -h^{n+1-alpha} phi_0(0) <Phi_0 V>; <Phi_0 V> = phi_0'(0) * (-1/12)
    const TransverseMode m0 = mode(kAsym, 0);
    const double expect = -std::pow(h, 4.0) * m0.at_origin() * m0.grad_origin(0) * (-1.0 / 12.0);
    CHECK(p.k.real() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(p.verdict == Verdict::exists);
}

TEST_CASE("strip-critical prediction on the asymmetric strip") {
    const PotentialSpec V = make_odd_linear_strip_potential({1.0, 0.0});
    const MomentSet ms = compute_moments(V, kAsym);
    const double h = 0.05, alpha = 0.25;
    const RegimePrediction p = predict_strip_critical(h, alpha, kAsym, ms);
    const TransverseMode m0 = mode(kAsym, 0);
    // k = -2 h^{3-alpha} phi_0(0) phi_0'(0) * (1/12)
    const double expect =
        -2.0 * std::pow(h, 3.0 - alpha) * m0.at_origin() * m0.grad_origin(0) / 12.0;
    CHECK(p.k.real() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(p.verdict == Verdict::absent);  // k < 0 here
    const RegimePrediction pneg =
        predict_strip_critical(h, alpha, kAsym, compute_moments(
            make_odd_linear_strip_potential({-1.0, 0.0}), kAsym));
    CHECK(pneg.verdict == Verdict::exists);
}

TEST_CASE("strip-critical prediction is indeterminate on the symmetric strip") {
    const PotentialSpec V = make_odd_linear_strip_potential({1.0, 0.0});
    const MomentSet ms = compute_moments(V, kSym);
    const RegimePrediction p = predict_strip_critical(0.05, 0.25, kSym, ms);
    CHECK(p.verdict == Verdict::indeterminate);
}

TEST_CASE("strip-critical applicability gates") {
    const PotentialSpec V = make_odd_linear_strip_potential({1.0, 0.0});
    const MomentSet ms = compute_moments(V, kAsym);
    CHECK_THROWS_AS((void)predict_strip_critical(0.05, 0.75, kAsym, ms), std::domain_error);
    const MomentSet ms_box = compute_moments(make_box_potential(2, {-1.0, 0.0}), kAsym);
    CHECK_THROWS_AS((void)predict_strip_critical(0.05, 0.25, kAsym, ms_box), std::domain_error);
}

TEST_CASE("baseline prediction -Delta + hV") {
    const PotentialSpec V = make_box_potential(2, {-1.0, 0.0});
    const RegimePrediction p = predict_de(0.1, V, kSym);
    // <V phi_0^2> = -int_{-1/2}^{1/2} phi_0^2 dx * 1
    const TransverseMode m0 = mode(kSym, 0);
    const QuadRule r = panel_rule({-0.5, 0.5}, 48);
    double wm = 0.0;
    for (int i = 0; i < r.x.size(); ++i) {
        const double p0 = m0.eval1(r.x[i]);
        wm -= r.w[i] * p0 * p0;
    }
    CHECK(p.k.real() == doctest::Approx(-0.05 * wm).epsilon(1e-12));
    CHECK(p.verdict == Verdict::exists);
    CHECK_THROWS_AS((void)predict_de(0.1, make_box_potential(2, {1.0, 0.0}), kSym),
                    std::domain_error);
}

TEST_CASE("condition report: mean-sign dichotomy") {
    const ConditionReport attract =
        check_conditions(compute_moments(make_box_potential(2, {-1.0, 0.0}), kSym), kSym);
    CHECK(attract.mean_sign == Verdict::exists);
    CHECK(attract.summary == "exists (mean-sign rule)");
    const ConditionReport repel =
        check_conditions(compute_moments(make_box_potential(2, {1.0, 0.0}), kSym), kSym);
    CHECK(repel.mean_sign == Verdict::absent);
}

TEST_CASE("condition report: zero-mean fixtures fall through to refined criteria") {
    const ConditionReport crit =
        check_conditions(compute_moments(make_linear_box_potential(2, {-1.0, 0.0}), kAsym), kAsym);
    CHECK(crit.sign_mean == 0);
    CHECK(crit.critical == Verdict::exists);
    const ConditionReport strip =
        check_conditions(compute_moments(make_odd_linear_strip_potential({-1.0, 0.0}), kAsym), kAsym);
    CHECK(strip.strip_applicable);
    CHECK(strip.strip == Verdict::exists);
}
