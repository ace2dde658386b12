#include <doctest.h>

#include "heatlab/mixed.hpp"

#include <cmath>

using namespace heatlab;

TEST_SUITE("mixed") {

TEST_CASE("scale functions evaluate and invert on both regimes") {
    auto pure = make_phi("pure", 1.0, 1.0);
    CHECK(pure.evaluate(2.0) == doctest::Approx(2.0));
    CHECK(pure.inverse(0.5) == doctest::Approx(0.5));

    auto two = make_phi("two-regime", 1.0, 1.5);
    CHECK(two.evaluate(0.25) == doctest::Approx(0.25));   // r <= 1: r^{a1}
    CHECK(two.evaluate(4.0) == doctest::Approx(8.0));     // r > 1: r^{a2}
    CHECK(two.evaluate(1.0) == doctest::Approx(1.0));     // continuous at the knee
    CHECK(two.inverse(8.0) == doctest::Approx(4.0));
    CHECK(two.inverse(0.25) == doctest::Approx(0.25));

    // round trip across ten dyadic decades
    for (int e = -10; e <= 10; ++e) {
        const double r = std::pow(2.0, e);
        CHECK(two.inverse(two.evaluate(r)) == doctest::Approx(r).epsilon(1e-12));
        CHECK(pure.inverse(pure.evaluate(r)) == doctest::Approx(r).epsilon(1e-12));
    }

    // the doubling band: phi(R)/phi(r) between (R/r)^{a1} and (R/r)^{a2}
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
        const double R = 2.0 * r;
        const double q = two.evaluate(R) / two.evaluate(r);
        CHECK(q >= std::pow(2.0, 1.0) - 1e-12);
        CHECK(q <= std::pow(2.0, 1.5) + 1e-12);
    }

    CHECK_THROWS_AS(make_phi("two-regime", 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_phi("pure", 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_phi("pure", 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_phi("cubic", 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("scale-function kernel saturates its envelope exactly") {
    auto phi = make_phi("two-regime", 0.5, 1.5);
    auto k = make_mixed_kernel(phi, 1.0, 1);
    CHECK(k.params.alpha == doctest::Approx(0.5));
    // d = 1: k(r) = Lambda / (2 r phi(r))
    CHECK(k.evaluate_diff(0.0, {0.5, 0.0}) ==
          doctest::Approx(1.0 / (2.0 * 0.5 * phi.evaluate(0.5))));
    CHECK(k.evaluate_diff(0.0, {4.0, 0.0}) ==
          doctest::Approx(1.0 / (2.0 * 4.0 * phi.evaluate(4.0))));
    CHECK(k.evaluate_diff(0.0, {-4.0, 0.0}) == k.evaluate_diff(0.0, {4.0, 0.0}));
    auto rep = check_upper_bound(k, 2000);
    CHECK(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compensating integrals match closed forms for a pure scale function") {
    const double alpha = 1.0, Lambda = 1.0;
    auto phi = make_phi("pure", alpha, alpha);
    std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
    auto rep = check_mixed_integrals(phi, Lambda, 1, radii);
    CHECK(rep.pass);
    for (size_t i = 0; i < radii.size(); ++i) {
        const double R = radii[i];
        // int_{B_R} r^2 k = Lambda R^{2-a} / (2-a),  int_{B_R^c} k = Lambda/(a R^a)
        CHECK(rep.second_moment[i] ==
              doctest::Approx(Lambda * std::pow(R, 2.0 - alpha) / (2.0 - alpha))
                  .epsilon(1e-8));
        CHECK(rep.tail_mass[i] ==
              doctest::Approx(Lambda / (alpha * std::pow(R, alpha))).epsilon(1e-8));
    }
    // pure power: both normalized fits are exactly flat in R
    CHECK(rep.c1_max_over_median == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.c2_max_over_median == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("compensating integrals stay within the band across the regime knee") {
    auto phi = make_phi("two-regime", 0.75, 1.25);
    auto rep = check_mixed_integrals(phi, 1.0, 1, {0.25, 0.5, 1.0, 2.0, 4.0});
    CHECK(rep.pass);
    CHECK(rep.c1_max_over_median <= 10.0);
    CHECK(rep.c2_max_over_median <= 10.0);
    auto rep2 = check_mixed_integrals(phi, 1.0, 2, {0.5, 1.0, 2.0});
    CHECK(rep2.pass);
}

TEST_CASE("reference shape takes the on-diagonal cap and the tail branch") {
    auto phi = make_phi("pure", 1.0, 1.0);
    // at dist 0: (omega_1 * phi^{-1}(dt))^{-1} = 1/(2 dt)
    CHECK(reference_mixed(0.0, 0.25, phi, 1) == doctest::Approx(2.0));
    // far out: dt / (omega_1 r phi(r))
    CHECK(reference_mixed(10.0, 0.25, phi, 1) ==
          doctest::Approx(0.25 / (2.0 * 10.0 * 10.0)));
    CHECK_THROWS_AS(reference_mixed(0.0, 0.0, phi, 1), std::domain_error);

    // for a pure power the shape is equivalent to the jump-index reference up
    // to the ball-volume normalization: ratio within [omega/2^{(d+a)/a}, omega]
    for (double dist : {0.0, 0.3, 1.0, 3.0, 8.0}) {
        const double q =
            reference_uhke(dist, 0.25, 1.0, 1) / reference_mixed(dist, 0.25, phi, 1);
        CHECK(q >= 2.0 / 4.0 - 1e-12);
        CHECK(q <= 2.0 + 1e-12);
    }
}

TEST_CASE("heat kernel of a two-regime kernel meets the scale-function bound") {
    auto phi = make_phi("two-regime", 1.0, 1.5);
    auto k = make_mixed_kernel(phi, 1.0, 1);
    Lattice lat(1, 0.1, 16.0);
    Schedule sched{0.0, 0.25, 16};
    VerifyOptions opts;
    opts.wrap_tolerance = 1.0;
    auto rep = verify_mixed(k, lat, sched, {lat.cell_count() / 2}, phi, opts);
    CHECK(rep.pass);
    CHECK(rep.bound.pass);
    CHECK(rep.bound.refinement_drift < 0.2);
    CHECK(rep.fitted_C2 > 0.0);
}

TEST_CASE("pure scale function and jump-index fits agree up to the volume factor") {
    auto phi = make_phi("pure", 1.0, 1.0);
    auto km = make_mixed_kernel(phi, 1.0, 1);
    // fractional kernel with Lambda = 1/omega_1 = 1/2 has the same intensity
    // as the scale-function kernel, so the two fits share one heat kernel
    KernelParams p;
    p.Lambda = 0.5;
    p.lambda = 0.5;
    auto kf = make_preset("fractional", p);
    Lattice lat(1, 0.1, 16.0);
    Schedule sched{0.0, 0.25, 16};
    VerifyOptions opts;
    opts.wrap_tolerance = 1.0;
    opts.refine = false;
    auto repm = verify_mixed(km, lat, sched, {lat.cell_count() / 2}, phi, opts);
    auto repf = verify_uhke(kf, lat, sched, {lat.cell_count() / 2}, opts);
    const double ratio = repm.bound.fitted_constant / repf.fitted_constant;
    // reference shapes differ by omega_d and at most 2^{(d+a)/a}; allow 20% on top
    CHECK(ratio >= 0.5 * 0.8);
    CHECK(ratio <= 2.0 * 1.2);
}

} // TEST_SUITE
