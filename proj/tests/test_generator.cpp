#include <doctest.h>

#include "heatlab/generator.hpp"

#include <cmath>
#include <random>

using namespace heatlab;

namespace {

JumpKernel constant_kernel(double value, int dim = 1) {
    KernelParams p;
    p.dim = dim;
    auto k = make_preset("fractional", p);
    k.profile = [value](double, const Point&) { return value; };
    k.tag = "constant";
    return k;
}

} // namespace

TEST_SUITE("generator") {

TEST_CASE("constant kernel on four cells gives unit weights and diagonal -3") {
    Lattice lat(1, 1.0, 4.0);
    auto g = assemble_generator(constant_kernel(1.0), lat, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g.matrix(i, j) == doctest::Approx(i == j ? -3.0 : 1.0));
}

TEST_CASE("fractional weights scale with h^d and the power law") {
    Lattice lat(1, 0.5, 8.0);
    auto k = make_preset("fractional", KernelParams{});  // alpha 1, Lambda 1
    auto g = assemble_generator(k, lat, 0.0);
    // neighbors at distance h = 0.5: k = 0.5^{-2} = 4, weight = 4 * 0.5 = 2
    CHECK(g.matrix(0, 1) == doctest::Approx(2.0));
    // distance 1: k = 1, weight = 0.5
    CHECK(g.matrix(0, 2) == doctest::Approx(0.5));
}

TEST_CASE("rows sum to zero exactly and the matrix is symmetric") {
    Lattice lat(2, 0.5, 4.0);
    KernelParams p;
    p.dim = 2;
    p.alpha = 1.5;
    auto g = assemble_generator(make_preset("fractional", p), lat, 0.0);
    const int n = lat.cell_count();
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            row += g.matrix(i, j);
            CHECK(g.matrix(i, j) == g.matrix(j, i));
        }
        CHECK(std::abs(row) <= 1e-12 * std::abs(g.matrix(i, i)));
    }
}

TEST_CASE("truncated and full generators agree inside the truncation radius") {
    Lattice lat(1, 0.5, 8.0);
    auto k = make_preset("fractional", KernelParams{});
    auto g = assemble_generator(k, lat, 0.0);
    auto gt = assemble_generator(truncate(k, 1.5), lat, 0.0);
    for (int j = 1; j < lat.cell_count(); ++j) {
        if (lat.distance(0, j) <= 1.5)
            CHECK(gt.matrix(0, j) == doctest::Approx(g.matrix(0, j)));
        else
            CHECK(gt.matrix(0, j) == 0.0);
    }
}

TEST_CASE("dirichlet form of a single-cell indicator under constant weights is 6") {
    Lattice lat(1, 1.0, 4.0);
    auto g = assemble_generator(constant_kernel(1.0), lat, 0.0);
    GridField u(lat);
    u.values[0] = 1.0;
    CHECK(dirichlet_form(g, u, u) == doctest::Approx(6.0));
}

TEST_CASE("dirichlet form matches a brute-force pair sum and 2<-Gu,v>h^d") {
    Lattice lat(1, 0.5, 4.0);  // 8 cells
    auto k = make_preset("fractional", KernelParams{});
    auto g = assemble_generator(k, lat, 0.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridField u(lat), v(lat);
    for (int i = 0; i < 8; ++i) {
        u.values[i] = unif(rng);
        v.values[i] = unif(rng);
    }
    const double hd = lat.cell_volume();
    double brute = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (i == j) continue;
            brute += (u.values[i] - u.values[j]) * (v.values[i] - v.values[j]) *
                     k.evaluate_diff(0.0, lat.min_image(i, j)) * hd * hd;
        }
    const double form = dirichlet_form(g, u, v);
    CHECK(form == doctest::Approx(brute).epsilon(1e-12));

    double inner = 0.0;
    for (int i = 0; i < 8; ++i) {
        double gu = 0.0;
        for (int j = 0; j < 8; ++j) gu += g.matrix(i, j) * u.values[j];
        inner += -gu * v.values[i];
    }
    CHECK(form == doctest::Approx(2.0 * inner * hd).epsilon(1e-12));

    // bilinear and zero on constants
    GridField ones(lat);
    for (auto& x : ones.values) x = 3.0;
    CHECK(dirichlet_form(g, ones, ones) == doctest::Approx(0.0));
    GridField u2 = u;
    for (auto& x : u2.values) x *= 2.0;
    CHECK(dirichlet_form(g, u2, v) == doctest::Approx(2.0 * form).epsilon(1e-12));
}

TEST_CASE("gagliardo seminorm of a cell indicator over a three-cell region is 2.5") {
    Lattice lat(1, 1.0, 8.0);
    GridField u(lat);
    u.values[0] = 1.0;
    std::vector<int> region{0, 1, 2};
    // ordered pairs from cell 0: two at distance 1 (value 1 each) and two at
    // distance 2 (value 1/4 each)
    CHECK(gagliardo_seminorm(lat, u, 1.0, region) == doctest::Approx(2.5));
}

TEST_CASE("gagliardo seminorm is zero on constants and quadratic in scaling") {
    Lattice lat(1, 0.5, 4.0);
    GridField c(lat);
    for (auto& x : c.values) x = 2.0;
    CHECK(gagliardo_seminorm(lat, c, 1.5) == doctest::Approx(0.0));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GridField u(lat);
    for (auto& x : u.values) x = unif(rng);
    const double base = gagliardo_seminorm(lat, u, 1.5);
    GridField u3 = u;
    for (auto& x : u3.values) x *= 3.0;
    CHECK(gagliardo_seminorm(lat, u3, 1.5) == doctest::Approx(9.0 * base).epsilon(1e-12));
}

} // TEST_SUITE
