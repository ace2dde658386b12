#include <doctest.h>

#include "heatlab/kernels.hpp"

#include <cmath>
#include <stdexcept>

using namespace heatlab;

TEST_SUITE("kernels") {

TEST_CASE("parameter validation rejects out-of-range values") {
    KernelParams p;
    p.alpha = 2.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha = 1.0;
    p.lambda = 2.0;  // exceeds Lambda = 1
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.lambda = 1.0;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("fractional kernel evaluates Lambda |diff|^{-d-alpha}") {
    KernelParams p;  // alpha = 1, Lambda = 1, d = 1
    auto k = make_preset("fractional", p);
    // |diff| = 2, exponent d + alpha = 2: 2^{-2} = 0.25
    CHECK(k.evaluate_diff(0.3, {2.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(k.evaluate(0.0, {1.0, 0.0}, {3.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-14));
    // symmetric in the displacement sign
    CHECK(k.evaluate_diff(0.0, {-2.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(k.evaluate_diff(0.0, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("cone kernel vanishes off the cone and matches fractional on the axis") {
    KernelParams p;
    p.dim = 2;
    PresetOptions opt;
    opt.cone_aperture = M_PI / 8.0;
    opt.cone_axis = {1.0, 0.0};
    auto cone = make_preset("cone", p, opt);
    auto frac = make_preset("fractional", p);
    CHECK(cone.evaluate_diff(0.0, {2.0, 0.0}) ==
          doctest::Approx(frac.evaluate_diff(0.0, {2.0, 0.0})));
    CHECK(cone.evaluate_diff(0.0, {-2.0, 0.0}) ==
          doctest::Approx(frac.evaluate_diff(0.0, {2.0, 0.0})));
    CHECK(cone.evaluate_diff(0.0, {0.0, 2.0}) == 0.0);

    opt.cone_aperture = M_PI;  // not a proper double cone
    CHECK_THROWS_AS(make_preset("cone", p, opt), std::invalid_argument);
    opt.cone_aperture = M_PI / 4.0;
    opt.cone_axis = {0.0, 0.0};
    CHECK_THROWS_AS(make_preset("cone", p, opt), std::invalid_argument);
}

TEST_CASE("time-oscillating kernel moves between Lambda/4 and 3 Lambda/4") {
    KernelParams p;
    PresetOptions opt;
    opt.oscillation_period = 1.0;
    auto k = make_preset("time-oscillating", p, opt);
    CHECK_FALSE(k.time_independent);
    const double base = 0.25;  // fractional value at |diff| = 2
    CHECK(k.evaluate_diff(0.25, {2.0, 0.0}) == doctest::Approx(0.75 * base));  // sin = 1
    CHECK(k.evaluate_diff(0.75, {2.0, 0.0}) == doctest::Approx(0.25 * base));  // sin = -1
    CHECK(k.evaluate_diff(0.0, {2.0, 0.0}) == doctest::Approx(0.5 * base));
}

TEST_CASE("unknown preset is rejected") {
    CHECK_THROWS_AS(make_preset("gaussian", KernelParams{}), std::invalid_argument);
}

TEST_CASE("truncation zeroes long jumps, keeps short ones, and is idempotent") {
    auto k = make_preset("fractional", KernelParams{});
    auto kt = truncate(k, 1.0);
    CHECK(kt.evaluate_diff(0.0, {2.0, 0.0}) == 0.0);
    // |diff| = 0.5: 0.5^{-2} = 4, unchanged inside the radius
    CHECK(kt.evaluate_diff(0.0, {0.5, 0.0}) == doctest::Approx(4.0));
    CHECK(kt.evaluate_diff(0.0, {1.0, 0.0}) == doctest::Approx(1.0));  // boundary kept

    // re-truncating tightens but never loosens
    auto kt2 = truncate(kt, 2.0);
    CHECK(kt2.trunc_radius == doctest::Approx(1.0));
    auto kt3 = truncate(kt, 0.5);
    CHECK(kt3.trunc_radius == doctest::Approx(0.5));
    CHECK(kt3.evaluate_diff(0.0, {0.75, 0.0}) == 0.0);
    CHECK_THROWS_AS(truncate(k, 0.0), std::invalid_argument);
}

TEST_CASE("upper bound check passes presets and flags a doubled kernel") {
    auto k = make_preset("fractional", KernelParams{});
    auto rep = check_upper_bound(k, 2000);
    CHECK(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));

    // same shape scaled by 2 Lambda against the Lambda envelope: ratio 2
    JumpKernel bad = k;
    bad.profile = [](double, const Point& diff) {
        const double r = norm(diff);
        return 2.0 * std::pow(r, -2.0);
    };
    auto rep2 = check_upper_bound(bad, 2000);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.max_ratio == doctest::Approx(2.0).epsilon(1e-12));

    auto osc = make_preset("time-oscillating", KernelParams{});
    CHECK(check_upper_bound(osc, 2000).pass);
    CHECK_THROWS_AS(check_upper_bound(k, 0), std::invalid_argument);
}

TEST_CASE("coercivity of the fractional kernel equals Lambda") {
    KernelParams p;
    p.Lambda = 1.0;
    auto k = make_preset("fractional", p);
    Lattice lat(1, 0.5, 8.0);
    const double lam = estimate_coercivity(k, lat, 2.0, 0.0);
    CHECK(lam == doctest::Approx(1.0).epsilon(1e-10));

    p.Lambda = 3.0;
    p.lambda = 3.0;
    auto k3 = make_preset("fractional", p);
    CHECK(estimate_coercivity(k3, lat, 2.0, 0.0) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("coercivity of the planar cone kernel is strictly positive") {
    KernelParams p;
    p.dim = 2;
    PresetOptions opt;
    opt.cone_aperture = M_PI / 4.0;
    auto k = make_preset("cone", p, opt);
    Lattice lat(2, 0.25, 8.0);
    const double lam = estimate_coercivity(k, lat, 2.0, 0.0);
    CHECK(lam > 0.0);
    CHECK(lam < 1.0 + 1e-10);  // cannot beat the full fractional energy
}

TEST_CASE("coercivity of the zero kernel is zero") {
    auto k = make_preset("fractional", KernelParams{});
    k.profile = [](double, const Point&) { return 0.0; };
    Lattice lat(1, 0.5, 8.0);
    CHECK(estimate_coercivity(k, lat, 2.0, 0.0) == doctest::Approx(0.0));
}

} // TEST_SUITE
