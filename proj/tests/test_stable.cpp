#include <doctest.h>

#include "heatlab/quad.hpp"
#include "heatlab/stable.hpp"

#include <cmath>
#include <stdexcept>

using namespace heatlab;

TEST_SUITE("stable") {

TEST_CASE("symbol constant matches the Gamma-function closed forms") {
    // alpha = 1 is the removable singularity: c = Lambda * pi
    CHECK(symbol_constant(1, 1.0, 1.0) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(symbol_constant(1, 1.0, 2.5) == doctest::Approx(2.5 * M_PI).epsilon(1e-12));
    // 2 int_0^inf (1 - cos z) z^{-3/2} dz = 2 sqrt(2 pi)
    CHECK(symbol_constant(1, 0.5, 1.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    // alpha = 3/2: 2 Gamma(1/2) cos(3 pi/4) / (1.5 * (-0.5)) = 2 sqrt(2 pi) / 1.5
    CHECK(symbol_constant(1, 1.5, 1.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0 * M_PI) / 1.5).epsilon(1e-12));
    // continuous across alpha = 1
    CHECK(symbol_constant(1, 1.0 - 1e-8, 1.0) == doctest::Approx(M_PI).epsilon(1e-6));
    CHECK(symbol_constant(1, 1.0 + 1e-8, 1.0) == doctest::Approx(M_PI).epsilon(1e-6));
    CHECK_THROWS_AS(symbol_constant(2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("quadrature density agrees with the Cauchy closed form near alpha = 1") {
    // alpha = 1 - 1e-9 forces the Fourier-inversion branch; it must land on
    // the alpha = 1 closed form to high accuracy
    const double c = 2.0, t = 0.7;
    for (double x : {0.0, 0.5, 1.5, 4.0}) {
        const double cauchy = (c * t / M_PI) / (c * t * c * t + x * x);
        CHECK(stable_density_1d(1.0 - 1e-9, c, t, x) ==
              doctest::Approx(cauchy).epsilon(1e-6));
        CHECK(stable_density_1d(1.0, c, t, x) ==
              doctest::Approx(cauchy).epsilon(1e-14));
    }
}

TEST_CASE("density obeys the stable scaling w(t,x) = t^{-1/a} w(1, x t^{-1/a})") {
    for (double alpha : {0.5, 1.5}) {
        const double c = 1.3, t = 0.4;
        const double scale = std::pow(t, -1.0 / alpha);
        for (double x : {0.0, 0.8, 2.0}) {
            CHECK(stable_density_1d(alpha, c, t, x) ==
                  doctest::Approx(scale * stable_density_1d(alpha, c, 1.0, x * scale))
                      .epsilon(1e-8));
        }
    }
}

TEST_CASE("periodized density sums the free-space images and has unit mass") {
    const double L = 16.0, t = 1.0, c = 1.0;
    // alpha = 1: both sides in closed form
    for (double x : {0.0, 1.0, 5.0}) {
        double images = 0.0;
        for (int m = -2000; m <= 2000; ++m) {
            const double xm = x + m * L;
            images += (c * t / M_PI) / (c * t * c * t + xm * xm);
        }
        CHECK(stable_density_periodized_1d(1.0, c, t, L, x) ==
              doctest::Approx(images).epsilon(1e-4));
    }
    // trapezoid rule over one period is exact for the (rapidly truncated)
    // Fourier series: total mass 1
    for (double alpha : {0.5, 1.0, 1.5}) {
        const int n = 4096;
        double mass = 0.0;
        for (int i = 0; i < n; ++i)
            mass += stable_density_periodized_1d(alpha, c, t, L, i * L / n) * (L / n);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("space and time derivatives match centered finite differences") {
    const double alpha = 1.5, c = 1.0, t = 0.7, x = 0.9, d = 1e-4;
    const double fd_dx = (stable_density_1d(alpha, c, t, x + d) -
                          stable_density_1d(alpha, c, t, x - d)) / (2 * d);
    CHECK(stable_density_1d_dx(alpha, c, t, x) == doctest::Approx(fd_dx).epsilon(1e-5));
    const double fd_dt = (stable_density_1d(alpha, c, t + d, x) -
                          stable_density_1d(alpha, c, t - d, x)) / (2 * d);
    CHECK(stable_density_1d_dt(alpha, c, t, x) == doctest::Approx(fd_dt).epsilon(1e-5));
}

TEST_CASE("carre du champ of the root density is positive and scales like t^{-2} at alpha 1") {
    const double g1 = carre_du_champ_sqrt_density_1d(1.0, 1.0, 1.0);
    const double g2 = carre_du_champ_sqrt_density_1d(1.0, 1.0, 2.0);
    CHECK(g1 > 0.0);
    CHECK(g2 == doctest::Approx(g1 / 4.0).epsilon(1e-6));
    CHECK(carre_du_champ_sqrt_density_1d(0.5, 1.0, 1.0) > 0.0);
    CHECK(carre_du_champ_sqrt_density_1d(1.5, 1.0, 1.0) > 0.0);
}

} // TEST_SUITE
