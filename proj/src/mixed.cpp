#include "heatlab/mixed.hpp"

#include "heatlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatlab {

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double max_over_median(const std::vector<double>& v) {
    const double med = median_of(v);
    const double mx = *std::max_element(v.begin(), v.end());
    if (med > 0.0) return mx / med;
    return mx == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

} // namespace

double ScaleFunction::evaluate(double r) const {
    if (r < 0.0) throw std::domain_error("scale function: negative radius");
    if (r == 0.0) return 0.0;
    if (kind == "pure") return std::pow(r, alpha1);
    return r <= 1.0 ? std::pow(r, alpha1) : std::pow(r, alpha2);
}

double ScaleFunction::inverse(double value) const {
    if (value < 0.0) throw std::domain_error("scale function: negative value");
    if (value == 0.0) return 0.0;
    if (kind == "pure") return std::pow(value, 1.0 / alpha1);
    return value <= 1.0 ? std::pow(value, 1.0 / alpha1)
                        : std::pow(value, 1.0 / alpha2);
}

ScaleFunction make_phi(const std::string& kind, double alpha1, double alpha2) {
    if (kind != "pure" && kind != "two-regime") {
        throw std::invalid_argument("scale function kind must be pure or two-regime");
    }
    if (alpha1 <= 0.0 || alpha2 >= 2.0 || alpha1 > alpha2) {
        throw std::invalid_argument(
            "scale function exponents must satisfy 0 < alpha1 <= alpha2 < 2");
    }
    ScaleFunction phi;
    phi.kind = kind;
    phi.alpha1 = alpha1;
    phi.alpha2 = alpha2;
    phi.C_scale = 1.0; // exact powers on each branch
    return phi;
}

JumpKernel make_mixed_kernel(const ScaleFunction& phi, double Lambda, int d) {
    if (Lambda <= 0.0) throw std::invalid_argument("mixed kernel: Lambda must be positive");
    const double omega = unit_ball_volume(d);
    JumpKernel k;
    k.params.alpha = phi.alpha1;
    k.params.Lambda = Lambda;
    k.params.lambda = Lambda;
    k.params.dim = d;
    k.params.validate();
    k.kind = "mixed-phi";
    k.tag = "mixed-" + phi.kind;
    k.time_independent = true;
    k.translation_invariant = true;
    k.profile = [phi, Lambda, omega, d](double, const Point& diff) {
        const double r = norm(diff);
        return Lambda / (omega * std::pow(r, d) * phi.evaluate(r));
    };
    k.envelope = [phi, Lambda, omega, d](const Point& diff) {
        const double r = norm(diff);
        return Lambda / (omega * std::pow(r, d) * phi.evaluate(r));
    };
    return k;
}

MixedIntegralsReport check_mixed_integrals(const ScaleFunction& phi,
                                           double Lambda, int d,
                                           const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("mixed integrals: empty sweep");
    MixedIntegralsReport rep;
    rep.radii = radii;
    for (double R : radii) {
        if (R <= 0.0) throw std::invalid_argument("mixed integrals: R must be positive");
        // int_{B_R} r^2 k dy = surface * int_0^R r^{d+1} k(r) dr
        //                    = d Lambda int_0^R r / phi(r) dr.
        auto moment_integrand = [&](double r) {
            return d * Lambda * r / phi.evaluate(r);
        };
        const double moment = integrate(moment_integrand, 0.0, R).value;
        // int_{B_R^c} k dy = d Lambda int_R^inf r^{-1} / phi(r) dr.
        auto tail_integrand = [&](double r) {
            return d * Lambda / (r * phi.evaluate(r));
        };
        const double tail = integrate_to_inf(tail_integrand, R).value;
        rep.second_moment.push_back(moment);
        rep.tail_mass.push_back(tail);
        rep.c1.push_back(moment * phi.evaluate(R) / (R * R));
        rep.c2.push_back(tail * phi.evaluate(R));
    }
    rep.c1_max_over_median = max_over_median(rep.c1);
    rep.c2_max_over_median = max_over_median(rep.c2);
    const bool finite =
        std::all_of(rep.c1.begin(), rep.c1.end(),
                    [](double c) { return std::isfinite(c); }) &&
        std::all_of(rep.c2.begin(), rep.c2.end(),
                    [](double c) { return std::isfinite(c); });
    rep.pass = finite && rep.c1_max_over_median <= 10.0 &&
               rep.c2_max_over_median <= 10.0;
    return rep;
}

double reference_mixed(double dist, double dt, const ScaleFunction& phi, int d) {
    if (dt <= 0.0) throw std::domain_error("reference: elapsed time must be positive");
    const double omega = unit_ball_volume(d);
    const double ondiag = 1.0 / (omega * std::pow(phi.inverse(dt), d));
    if (dist == 0.0) return ondiag;
    const double offdiag = dt / (omega * std::pow(dist, d) * phi.evaluate(dist));
    return std::min(ondiag, offdiag);
}

MixedBoundReport verify_mixed(const JumpKernel& k, const Lattice& lat,
                              const Schedule& sched,
                              const std::vector<int>& sources,
                              const ScaleFunction& phi,
                              const VerifyOptions& opts) {
    if (sources.empty()) throw std::invalid_argument("verify: no sources given");
    const int d = lat.dim();
    const double dt = sched.end - sched.start;
    const double omega = unit_ball_volume(d);

    auto fit_on = [&](const Lattice& grid, const Schedule& sch,
                      MixedBoundReport* rep) {
        double c = 0.0;
        for (int src_base : sources) {
            // Sources are cell indices of the base lattice; find the cell of
            // `grid` at the same position.
            const Point pos = lat.coord(src_base);
            int src = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < grid.cell_count(); ++i) {
                const double dd = norm(grid.wrap(sub(grid.coord(i), pos)));
                if (dd < best) {
                    best = dd;
                    src = i;
                }
            }
            GridField p = fundamental_solution(k, grid, sch, src);
            const double cut = grid.period() / 4.0;
            double wrap_mass = 0.0;
            for (int i = 0; i < grid.cell_count(); ++i) {
                const double dist = grid.distance(src, i);
                const double pv = p.values[static_cast<size_t>(i)];
                if (dist > cut) {
                    wrap_mass += pv * grid.cell_volume();
                    continue;
                }
                const double ref = reference_mixed(dist, dt, phi, d);
                const double ratio = pv / ref;
                if (ratio > c) {
                    c = ratio;
                    if (rep != nullptr) {
                        rep->bound.max_ratio_cell = i;
                        rep->bound.max_ratio_distance = dist;
                    }
                }
                if (rep != nullptr && opts.record_profile &&
                    src_base == sources.front()) {
                    rep->bound.profile.push_back({dist, pv, ref, ratio});
                }
            }
            if (rep != nullptr) {
                rep->bound.wraparound_indicator =
                    std::max(rep->bound.wraparound_indicator, wrap_mass);
            }
        }
        return c;
    };

    MixedBoundReport rep;
    rep.bound.bound_name = "mixed-scale";
    rep.bound.params = {{"alpha1", phi.alpha1}, {"alpha2", phi.alpha2},
                        {"d", static_cast<double>(d)}, {"dt", dt},
                        {"h", lat.spacing()}, {"L", lat.period()}};
    rep.bound.fitted_constant = fit_on(lat, sched, &rep);
    if (opts.record_profile) {
        std::sort(rep.bound.profile.begin(), rep.bound.profile.end(),
                  [](const ProfilePoint& a, const ProfilePoint& b) {
                      return a.distance != b.distance ? a.distance < b.distance
                                                      : a.p > b.p;
                  });
    }
    if (rep.bound.wraparound_indicator > opts.wrap_tolerance) {
        throw std::runtime_error(
            "verify refused: wrap-around indicator " +
            std::to_string(rep.bound.wraparound_indicator) +
            " exceeds tolerance; increase the period L");
    }
    if (opts.refine) {
        const Lattice fine(lat.dim(), lat.spacing() / 2.0, lat.period());
        const Schedule sched_h =
            Schedule::with_auto_steps(sched.start, sched.end, k, fine);
        const double c_h = fit_on(fine, sched_h, nullptr);
        Schedule sched_tau = sched;
        sched_tau.steps *= 2;
        const double c_tau = fit_on(lat, sched_tau, nullptr);
        rep.bound.refinement_drift =
            std::max(std::abs(c_h - rep.bound.fitted_constant),
                     std::abs(c_tau - rep.bound.fitted_constant)) /
            rep.bound.fitted_constant;
    }

    // Mass-based local boundedness: sup of p over the late half cylinder
    // against C2 / (omega R^d) with R = phi^{-1}(dt) and unit mass.
    {
        const double R = phi.inverse(dt);
        const double t_lo = sched.end - phi.evaluate(R / 2.0);
        const int src = sources.front();
        const std::vector<int> inner = lat.ball(src, R / 2.0);
        double sup_half = 0.0;
        GridField u0(lat, sched.start);
        u0.values[static_cast<size_t>(src)] = 1.0 / lat.cell_volume();
        evolve(k, lat, sched, u0,
               [&](int, double t, const std::vector<double>& u) {
                   if (t > t_lo) {
                       for (int i : inner) {
                           sup_half = std::max(sup_half, u[static_cast<size_t>(i)]);
                       }
                   }
               });
        rep.fitted_C2 = sup_half * omega * std::pow(R, d);
    }

    rep.bound.pass = std::isfinite(rep.bound.fitted_constant) &&
                     rep.bound.fitted_constant > 0.0 &&
                     (!opts.refine ||
                      rep.bound.refinement_drift < opts.drift_tolerance);
    rep.pass = rep.bound.pass && std::isfinite(rep.fitted_C2) && rep.fitted_C2 > 0.0;
    return rep;
}

} // namespace heatlab
