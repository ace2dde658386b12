#include <doctest.h>

#include "heatlab/aronson.hpp"

#include <cmath>
#include <random>

using namespace heatlab;

namespace {

WeightParams sample_params() {
    WeightParams wp;
    wp.center = {0.0, 0.0};
    wp.rho = 2.0;
    wp.eta = 0.0;
    wp.nu = 4.0;
    wp.alpha = 1.0;
    wp.s = wp.rho / (4.0 * wp.nu);  // smallness with equality
    return wp;
}

} // namespace

TEST_SUITE("aronson") {

TEST_CASE("truncated carre du champ of a cell indicator is 2.5") {
    Lattice lat(1, 1.0, 8.0);
    GridField f(lat);
    f.values[0] = 1.0;
    auto g = carre_du_champ_trunc(lat, f, 1.0, 2.5);
    // neighbors of cell 0 within 2.5: distances 1, 2 on both sides,
    // contributions 1 + 1/4 each side
    CHECK(g.values[0] == doctest::Approx(2.5));
    // constants have zero energy everywhere
    GridField c(lat);
    for (auto& x : c.values) x = 3.0;
    auto gc = carre_du_champ_trunc(lat, c, 1.0, 2.5);
    for (double v : gc.values) CHECK(v == doctest::Approx(0.0));
    // quadratic in the field
    GridField f2(lat);
    f2.values[0] = 2.0;
    CHECK(carre_du_champ_trunc(lat, f2, 1.0, 2.5).values[0] == doctest::Approx(10.0));
    // the ball must not wrap onto itself
    CHECK_THROWS_AS(carre_du_champ_trunc(lat, f, 1.0, 4.0), std::domain_error);
}

TEST_CASE("truncated carre du champ matches a direct stencil sum") {
    Lattice lat(1, 0.5, 8.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridField f(lat);
    for (auto& x : f.values) x = unif(rng);
    const double alpha = 1.5, rho = 1.75;
    auto g = carre_du_champ_trunc(lat, f, alpha, rho);
    for (int i = 0; i < lat.cell_count(); ++i) {
        double direct = 0.0;
        for (int j = 0; j < lat.cell_count(); ++j) {
            const double r = lat.distance(i, j);
            if (r == 0.0 || r > rho) continue;
            const double df = f.values[i] - f.values[j];
            direct += df * df * std::pow(r, -1.0 - alpha) * lat.cell_volume();
        }
        CHECK(g.values[i] == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("weight parameters enforce the smallness condition") {
    auto wp = sample_params();
    CHECK_NOTHROW(wp.validate());
    wp.s = wp.eta + wp.rho / (4.0 * wp.nu) * 1.01;  // violates s - eta <= rho^a/(4 nu)
    CHECK_THROWS_AS(wp.validate(), std::invalid_argument);
    wp = sample_params();
    wp.nu = 1.0;
    CHECK_THROWS_AS(wp.validate(), std::invalid_argument);
    wp = sample_params();
    wp.s = wp.eta;
    CHECK_THROWS_AS(wp.validate(), std::invalid_argument);
}

TEST_CASE("weight takes the value base^{-1} inside and base^{-e} outside") {
    Lattice lat(1, 0.25, 48.0);
    auto wp = sample_params();  // rho = 2, nu = 4, alpha = 1, s = 1/8
    wp.center = lat.coord(0);
    const double t = wp.eta;
    // [eta] = 2(s - eta), base = rho^alpha / (2 nu (s - eta)) = 2
    const double base = wp.rho / (2.0 * wp.nu * (wp.s - wp.eta));
    CHECK(wp.base(t) == doctest::Approx(base));
    auto H = weight_H(lat, wp, t);
    // inside dist <= 3 rho = 6 the exponent is frozen at 1
    CHECK(H.values[0] == doctest::Approx(1.0 / base).epsilon(1e-14));
    CHECK(H.values[lat.ball(0, 6.0)[1]] == doctest::Approx(1.0 / base).epsilon(1e-14));
    // at dist = 6 rho = 12 the exponent is 2
    const int far = lat.flat_index(static_cast<int>(12.0 / 0.25));
    CHECK(lat.distance(0, far) == doctest::Approx(12.0));
    CHECK(H.values[far] == doctest::Approx(std::pow(base, -2.0)).epsilon(1e-13));
    for (double v : H.values) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("weight is nonincreasing in time and radially nonincreasing") {
    Lattice lat(1, 0.25, 48.0);
    auto wp = sample_params();
    wp.center = lat.coord(0);
    auto H1 = weight_H(lat, wp, wp.eta + 0.2 * (wp.s - wp.eta));
    auto H2 = weight_H(lat, wp, wp.eta + 0.8 * (wp.s - wp.eta));
    for (int i = 0; i < lat.cell_count(); ++i)
        CHECK(H2.values[i] <= H1.values[i] * (1.0 + 1e-14));
    // farther cells never carry more weight
    for (int off = 1; off < lat.cells_per_axis() / 2; ++off)
        CHECK(H1.values[off + 1] <= H1.values[off] * (1.0 + 1e-14));
}

TEST_CASE("analytic time derivative matches centered differences at second order") {
    Lattice lat(1, 0.5, 48.0);
    auto wp = sample_params();
    wp.center = lat.coord(0);
    const double t = wp.eta + 0.5 * (wp.s - wp.eta);
    auto exact = weight_H_dt(lat, wp, t);
    auto fd_error = [&](double dt) {
        auto Hp = weight_H(lat, wp, t + dt);
        auto Hm = weight_H(lat, wp, t - dt);
        double worst = 0.0;
        for (int i = 0; i < lat.cell_count(); ++i) {
            const double fd = (Hp.values[i] - Hm.values[i]) / (2.0 * dt);
            worst = std::max(worst, std::abs(fd - exact.values[i]));
        }
        return worst;
    };
    const double e1 = fd_error(1e-3);
    const double e2 = fd_error(5e-4);
    CHECK(e1 / e2 > 2.0);  // second-order: factor ~4
    CHECK(e1 / e2 < 8.0);
    for (double v : exact.values) CHECK(v <= 0.0);
}

TEST_CASE("differential inequality is trivial at C = 0 and certified by the search") {
    Lattice lat(1, 0.25, 24.0);
    auto wp = sample_params();
    wp.center = lat.coord(lat.cell_count() / 2);
    auto rep0 = check_H_inequality(lat, wp, 0.0);
    CHECK(rep0.pass);
    CHECK(rep0.max_gamma_case1 == 0.0);  // Gamma of H^{1/2} vanishes within 2 rho
    CHECK(rep0.min_slack >= 0.0);

    auto found = search_nu(lat, wp.center, wp.rho, 0.0, 1.0, 0.0);
    CHECK(found.found);
    CHECK(found.nu == doctest::Approx(2.0));  // C = 0 passes at the first candidate

    auto found1 = search_nu(lat, wp.center, wp.rho, 0.0, 1.0, 1.0);
    CHECK(found1.found);
    CHECK(found1.report.pass);
    CHECK(found1.monotonicity_checked);
    CHECK(found1.monotonicity_holds);
    CHECK(found1.nu >= 2.0);
}

TEST_CASE("weighted energy never grows for certified weights") {
    Lattice lat(1, 0.25, 24.0);
    const Point center = lat.coord(lat.cell_count() / 2);
    const double C = 1.0, rho = 2.0, eta = 0.0, alpha = 1.0;
    auto found = search_nu(lat, center, rho, eta, alpha, C);
    REQUIRE(found.found);
    WeightParams wp = found.report.params;

    auto k = truncate(make_preset("fractional", KernelParams{}), rho);
    Schedule sched = Schedule::with_auto_steps(wp.eta, wp.s, k, lat);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    GridField u0(lat, wp.eta);
    for (auto& x : u0.values) x = unif(rng);
    auto rep = check_weighted_estimate(k, lat, sched, u0, wp, C);
    CHECK(rep.pass);
    CHECK(rep.h_inequality_certified);
    CHECK(rep.W_max <= rep.W_initial * (1.0 + 1e-6));

    // zero data: the weighted energy is identically zero
    GridField zero(lat, wp.eta);
    CHECK(check_weighted_estimate(k, lat, sched, zero, wp, C).pass);

    // an uncertifiable constant is refused up front
    CHECK_THROWS_AS(check_weighted_estimate(k, lat, sched, u0, wp, 1e8),
                    std::runtime_error);
    // kernel truncation must match the weight's rho
    auto k_wrong = truncate(make_preset("fractional", KernelParams{}), rho / 2.0);
    CHECK_THROWS_AS(check_weighted_estimate(k_wrong, lat, sched, u0, wp, C),
                    std::exception);
}

TEST_CASE("decay check bounds data supported away from the center") {
    Lattice lat(1, 0.25, 40.0);
    const int center_cell = lat.cell_count() / 2;
    const Point center = lat.coord(center_cell);
    const double rho = 2.0, nu = 8.0, eta = 0.0;
    auto k = truncate(make_preset("fractional", KernelParams{}), rho);
    const double s = eta + rho / (8.0 * nu);
    Schedule sched = Schedule::with_auto_steps(eta, s, k, lat);

    auto rep = decay_estimate_check(k, lat, sched, 4.0, center, nu);
    CHECK(rep.ratio > 0.0);
    CHECK(rep.value_at_center > 0.0);
    CHECK(rep.value_at_center <= rep.rhs_without_constant);  // constant-1 bound holds here

    auto sweep = decay_estimate_sweep(k, lat, sched, {4.0, 4.5, 5.0}, center, nu);
    CHECK(sweep.pass);
    CHECK(sweep.max_over_median <= 50.0);

    // violating the smallness precondition throws
    Schedule bad{eta, eta + rho / nu, 8};
    CHECK_THROWS_AS(decay_estimate_check(k, lat, bad, 4.0, center, nu), std::exception);
}

} // TEST_SUITE
