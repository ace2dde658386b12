#include "heatlab/aronson.hpp"

#include "heatlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace heatlab {

namespace {

constexpr int kTimeSamples = 64;

double torus_distance(const Lattice& lat, const Point& x, const Point& y) {
    return norm(lat.wrap(sub(x, y)));
}

int nearest_cell(const Lattice& lat, const Point& p) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lat.cell_count(); ++i) {
        const double d = torus_distance(lat, lat.coord(i), p);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

std::vector<double> sqrt_field(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(v[i]);
    return out;
}

} // namespace

void WeightParams::validate() const {
    if (rho <= 0.0) throw std::invalid_argument("weight: rho must be positive");
    if (nu <= 1.0) throw std::invalid_argument("weight: nu must exceed 1");
    if (alpha <= 0.0 || alpha >= 2.0) {
        throw std::invalid_argument("weight: alpha must lie in (0, 2)");
    }
    if (s <= eta) throw std::invalid_argument("weight: s must exceed eta");
    const double cap = std::pow(rho, alpha) / (4.0 * nu);
    if (s - eta > cap * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "weight: smallness condition s - eta <= rho^alpha/(4 nu) violated");
    }
}

double WeightParams::bracket(double t) const {
    return 2.0 * (s - eta) - (t - eta);
}

double WeightParams::base(double t) const {
    return std::pow(rho, alpha) / (nu * bracket(t));
}

double WeightParams::exponent(const Lattice& lat, const Point& x) const {
    const double dist = torus_distance(lat, x, center);
    return std::max(dist / (3.0 * rho), 1.0);
}

GridField carre_du_champ_trunc(const Lattice& lat, const GridField& f,
                               double alpha, double rho) {
    if (!(lat == f.lattice)) {
        throw std::invalid_argument("carre du champ: field lattice mismatch");
    }
    if (rho >= lat.period() / 2.0) {
        throw std::domain_error(
            "carre du champ: rho must be below L/2 (ball wraps)");
    }
    const int d = lat.dim();
    const int n = lat.cells_per_axis();
    const double hv = lat.cell_volume();

    // Neighbor stencil relative to cell 0; valid for every cell by translation.
    struct Neighbor {
        int o0, o1;
        double weight;
    };
    std::vector<Neighbor> stencil;
    for (int j : lat.ball(0, rho)) {
        if (j == 0) continue;
        const double dist = lat.distance(0, j);
        Neighbor nb;
        nb.o0 = lat.axis_index(j, 0);
        nb.o1 = d == 2 ? lat.axis_index(j, 1) : 0;
        nb.weight = std::pow(dist, -d - alpha) * hv;
        stencil.push_back(nb);
    }

    GridField out(lat, f.time);
    parallel_for(lat.cell_count(), [&](int i) {
        const int i0 = lat.axis_index(i, 0);
        const int i1 = d == 2 ? lat.axis_index(i, 1) : 0;
        const double fi = f.values[static_cast<size_t>(i)];
        double acc = 0.0;
        for (const Neighbor& nb : stencil) {
            const int j0 = (i0 + nb.o0) % n;
            const int j1 = d == 2 ? (i1 + nb.o1) % n : 0;
            const double diff = fi - f.values[static_cast<size_t>(lat.flat_index(j0, j1))];
            acc += diff * diff * nb.weight;
        }
        out.values[static_cast<size_t>(i)] = acc;
    });
    return out;
}

GridField weight_H(const Lattice& lat, const WeightParams& wp, double t) {
    wp.validate();
    if (t < wp.eta - 1e-12 || t > wp.s + 1e-12) {
        throw std::invalid_argument("weight_H: time outside [eta, s]");
    }
    const double b = wp.base(t);
    if (b <= 1.0) {
        throw std::invalid_argument(
            "weight_H: base rho^alpha/(nu [t]) must exceed 1");
    }
    GridField out(lat, t);
    const double logb = std::log(b);
    for (int i = 0; i < lat.cell_count(); ++i) {
        const double e = wp.exponent(lat, lat.coord(i));
        out.values[static_cast<size_t>(i)] = std::exp(-logb * e);
    }
    return out;
}

GridField weight_H_dt(const Lattice& lat, const WeightParams& wp, double t) {
    GridField H = weight_H(lat, wp, t);
    const double br = wp.bracket(t);
    GridField out(lat, t);
    for (int i = 0; i < lat.cell_count(); ++i) {
        const double e = wp.exponent(lat, lat.coord(i));
        out.values[static_cast<size_t>(i)] =
            -H.values[static_cast<size_t>(i)] * e / br;
    }
    return out;
}

HInequalityReport check_H_inequality(const Lattice& lat, const WeightParams& wp,
                                     double C) {
    wp.validate();
    if (wp.rho >= lat.period() / 2.0) {
        throw std::domain_error("check_H_inequality: rho must be below L/2");
    }
    HInequalityReport rep;
    rep.params = wp;
    rep.C = C;
    rep.min_slack = std::numeric_limits<double>::infinity();
    rep.min_slack_case1 = std::numeric_limits<double>::infinity();
    rep.min_slack_case2 = std::numeric_limits<double>::infinity();
    rep.min_slack_case3 = std::numeric_limits<double>::infinity();

    // Classify cells once by distance to the weight center.
    std::vector<int> cell_case(static_cast<size_t>(lat.cell_count()));
    for (int i = 0; i < lat.cell_count(); ++i) {
        const double dist = torus_distance(lat, lat.coord(i), wp.center);
        cell_case[static_cast<size_t>(i)] =
            dist <= 2.0 * wp.rho ? 1 : (dist <= 3.0 * wp.rho ? 2 : 3);
    }

    for (int j = 0; j < kTimeSamples; ++j) {
        const double t =
            wp.eta + (wp.s - wp.eta) * static_cast<double>(j) / (kTimeSamples - 1);
        GridField H = weight_H(lat, wp, t);
        GridField dH = weight_H_dt(lat, wp, t);
        GridField root(lat, sqrt_field(H.values), t);
        GridField gamma = carre_du_champ_trunc(lat, root, wp.alpha, wp.rho);
        for (int i = 0; i < lat.cell_count(); ++i) {
            const size_t ui = static_cast<size_t>(i);
            const double slack = -dH.values[ui] - C * gamma.values[ui];
            rep.scale = std::max(rep.scale, std::abs(dH.values[ui]));
            if (slack < rep.min_slack) {
                rep.min_slack = slack;
                rep.worst_time = t;
                rep.worst_cell = i;
            }
            switch (cell_case[ui]) {
                case 1:
                    rep.min_slack_case1 = std::min(rep.min_slack_case1, slack);
                    rep.max_gamma_case1 =
                        std::max(rep.max_gamma_case1, gamma.values[ui]);
                    if (j == 0) ++rep.cells_case1;
                    break;
                case 2:
                    rep.min_slack_case2 = std::min(rep.min_slack_case2, slack);
                    if (j == 0) ++rep.cells_case2;
                    break;
                default:
                    rep.min_slack_case3 = std::min(rep.min_slack_case3, slack);
                    if (j == 0) ++rep.cells_case3;
                    break;
            }
        }
    }
    rep.pass = rep.min_slack >= -1e-10 * rep.scale;
    return rep;
}

NuSearchResult search_nu(const Lattice& lat, const Point& center, double rho,
                         double eta, double alpha, double C) {
    if (C < 0.0) throw std::invalid_argument("search_nu: C must be nonnegative");
    NuSearchResult result;
    for (double nu = 2.0; nu <= 1048576.0; nu *= 2.0) {
        result.tried.push_back(nu);
        WeightParams wp;
        wp.center = center;
        wp.rho = rho;
        wp.eta = eta;
        wp.nu = nu;
        wp.alpha = alpha;
        wp.s = eta + std::pow(rho, alpha) / (8.0 * nu);
        HInequalityReport rep = check_H_inequality(lat, wp, C);
        if (rep.pass) {
            result.found = true;
            result.nu = nu;
            result.report = rep;
            // Spot check: doubling nu on the same (eta, s) schedule must not
            // break the inequality (the slack only gains from steeper decay).
            WeightParams wp2 = wp;
            wp2.nu = 2.0 * nu;
            result.monotonicity_checked = true;
            result.monotonicity_holds = check_H_inequality(lat, wp2, C).pass;
            return result;
        }
    }
    return result;
}

WeightedEstimateReport check_weighted_estimate(const JumpKernel& k_trunc,
                                               const Lattice& lat,
                                               const Schedule& sched,
                                               const GridField& u0,
                                               const WeightParams& wp,
                                               double C) {
    wp.validate();
    if (std::abs(sched.start - wp.eta) > 1e-12 ||
        std::abs(sched.end - wp.s) > 1e-12) {
        throw std::invalid_argument(
            "weighted estimate: schedule must match the weight's (eta, s)");
    }
    if (k_trunc.trunc_radius <= 0.0 ||
        std::abs(k_trunc.trunc_radius - wp.rho) > 1e-12 * wp.rho) {
        throw std::invalid_argument(
            "weighted estimate: kernel must be truncated at the weight's rho");
    }

    WeightedEstimateReport rep;
    rep.params = wp;
    rep.C = C;
    HInequalityReport cert = check_H_inequality(lat, wp, C);
    rep.h_inequality_certified = cert.pass;
    if (!cert.pass) {
        throw std::runtime_error(
            "weighted estimate refused: H-inequality not certified at C=" +
            std::to_string(C) + " (min slack " + std::to_string(cert.min_slack) +
            "); increase nu or lower C");
    }

    const double hv = lat.cell_volume();
    auto weighted_energy = [&](double t, const std::vector<double>& u) {
        GridField H = weight_H(lat, wp, t);
        double W = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
            W += H.values[i] * u[i] * u[i];
        }
        return W * hv;
    };

    rep.W_initial = weighted_energy(wp.eta, u0.values);
    rep.W_max = rep.W_initial;
    rep.worst_time = wp.eta;
    evolve(k_trunc, lat, sched, u0,
           [&](int, double t, const std::vector<double>& u) {
               const double W = weighted_energy(t, u);
               if (W > rep.W_max) {
                   rep.W_max = W;
                   rep.worst_time = t;
               }
           });
    rep.pass = rep.W_max <= rep.W_initial * (1.0 + 1e-6);
    return rep;
}

DecayReport decay_estimate_check(const JumpKernel& k_trunc, const Lattice& lat,
                                 const Schedule& sched, double sigma,
                                 const Point& center, double nu) {
    const double rho = k_trunc.trunc_radius;
    if (rho <= 0.0) {
        throw std::invalid_argument("decay estimate: kernel must be truncated");
    }
    if (nu <= 1.0) throw std::invalid_argument("decay estimate: nu must exceed 1");
    const double alpha = k_trunc.params.alpha;
    const int d = lat.dim();
    const double dt = sched.end - sched.start;
    if (dt > std::pow(rho, alpha) / (4.0 * nu) * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "decay estimate: s - eta exceeds rho^alpha/(4 nu)");
    }
    if (sigma < 0.0) {
        throw std::invalid_argument("decay estimate: sigma must be nonnegative");
    }

    const int center_cell = nearest_cell(lat, center);
    GridField u0(lat, sched.start);
    for (int i = 0; i < lat.cell_count(); ++i) {
        u0.values[static_cast<size_t>(i)] =
            lat.distance(i, center_cell) <= sigma ? 0.0 : 1.0;
    }

    double l2 = 0.0;
    for (double v : u0.values) l2 += v * v;
    l2 = std::sqrt(l2 * lat.cell_volume());

    GridField u = evolve(k_trunc, lat, sched, u0);

    DecayReport rep;
    rep.sigma = sigma;
    rep.rho = rho;
    rep.nu = nu;
    rep.value_at_center = std::abs(u.values[static_cast<size_t>(center_cell)]);
    const double expo = -sigma / (6.0 * rho) + 0.5 + d / (2.0 * alpha);
    rep.rhs_without_constant = std::pow(dt, -d / (2.0 * alpha)) *
                               std::pow(2.0, sigma / (6.0 * rho)) *
                               std::pow(std::pow(rho, alpha) / (nu * dt), expo) *
                               l2;
    rep.ratio = rep.value_at_center / rep.rhs_without_constant;
    return rep;
}

DecaySweepReport decay_estimate_sweep(const JumpKernel& k_trunc,
                                      const Lattice& lat, const Schedule& sched,
                                      const std::vector<double>& sigmas,
                                      const Point& center, double nu) {
    DecaySweepReport rep;
    for (double sigma : sigmas) {
        rep.runs.push_back(
            decay_estimate_check(k_trunc, lat, sched, sigma, center, nu));
    }
    std::vector<double> ratios;
    for (const auto& r : rep.runs) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    const double maxr = ratios.back();
    rep.max_over_median = median > 0.0 ? maxr / median
                                       : (maxr == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    rep.pass = rep.max_over_median <= 50.0;
    return rep;
}

} // namespace heatlab
