#include "heatlab/verify.hpp"

#include "heatlab/aronson.hpp"
#include "heatlab/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatlab {

namespace {

// Cell of `to` sitting at the same physical position as `from`'s cell. Exact
// for the h -> h/2 refinements used here (cell centers are preserved).
int map_cell(const Lattice& from, int idx, const Lattice& to) {
    const Point p = from.coord(idx);
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < to.cell_count(); ++i) {
        const double d = norm(to.wrap(sub(to.coord(i), p)));
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

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

struct RatioFit {
    double constant = 0.0;
    int cell = -1;
    double distance = 0.0;
    double wrap_mass = 0.0;
    std::vector<ProfilePoint> profile;
};

// Max of p/reference over cells within torus distance L/4 of the source;
// wrap_mass is the heat-kernel mass beyond that radius.
RatioFit fit_ratio(const Lattice& lat, const std::vector<double>& p, int source,
                   const std::function<double(double dist)>& reference,
                   bool record_profile) {
    RatioFit fit;
    const double cut = lat.period() / 4.0;
    for (int i = 0; i < lat.cell_count(); ++i) {
        const double dist = lat.distance(source, i);
        const double pv = p[static_cast<size_t>(i)];
        if (dist > cut) {
            fit.wrap_mass += pv * lat.cell_volume();
            continue;
        }
        const double ref = reference(dist);
        const double ratio = pv / ref;
        if (ratio > fit.constant) {
            fit.constant = ratio;
            fit.cell = i;
            fit.distance = dist;
        }
        if (record_profile) fit.profile.push_back({dist, pv, ref, ratio});
    }
    if (record_profile) {
        std::sort(fit.profile.begin(), fit.profile.end(),
                  [](const ProfilePoint& a, const ProfilePoint& b) {
                      return a.distance != b.distance ? a.distance < b.distance
                                                      : a.p > b.p;
                  });
    }
    return fit;
}

} // namespace

double reference_uhke(double dist, double dt, double alpha, int d) {
    if (dt <= 0.0) throw std::domain_error("reference: elapsed time must be positive");
    return std::pow(dt, -static_cast<double>(d) / alpha) *
           std::pow(1.0 + std::pow(dist, alpha) / dt, -(d + alpha) / alpha);
}

BoundReport verify_uhke(const JumpKernel& k, const Lattice& lat,
                        const Schedule& sched, const std::vector<int>& sources,
                        const VerifyOptions& opts) {
    if (sources.empty()) throw std::invalid_argument("verify: no sources given");
    if (!check_upper_bound(k, 4096).pass) {
        throw std::invalid_argument("verify: kernel violates its envelope");
    }
    const double alpha = k.params.alpha;
    const int d = lat.dim();
    const double dt = sched.end - sched.start;

    auto fit_on = [&](const Lattice& grid, const Schedule& sch,
                      BoundReport* rep) {
        double c = 0.0;
        for (int src_base : sources) {
            const int src = map_cell(lat, src_base, grid);
            GridField p = fundamental_solution(k, grid, sch, src);
            RatioFit fit = fit_ratio(
                grid, p.values, src,
                [&](double dist) { return reference_uhke(dist, dt, alpha, d); },
                rep != nullptr && opts.record_profile && rep->profile.empty());
            if (rep != nullptr) {
                rep->wraparound_indicator =
                    std::max(rep->wraparound_indicator, fit.wrap_mass);
                if (fit.constant > c) {
                    rep->max_ratio_cell = fit.cell;
                    rep->max_ratio_distance = fit.distance;
                }
                if (!fit.profile.empty()) rep->profile = std::move(fit.profile);
            }
            c = std::max(c, fit.constant);
        }
        return c;
    };

    BoundReport rep;
    rep.bound_name = "offdiag-power";
    rep.params = {{"alpha", alpha}, {"d", static_cast<double>(d)},
                  {"dt", dt},       {"h", lat.spacing()},
                  {"L", lat.period()}, {"steps", static_cast<double>(sched.steps)}};
    rep.fitted_constant = fit_on(lat, sched, &rep);
    if (rep.wraparound_indicator > opts.wrap_tolerance) {
        throw std::runtime_error(
            "verify refused: wrap-around indicator " +
            std::to_string(rep.wraparound_indicator) + " exceeds tolerance " +
            std::to_string(opts.wrap_tolerance) + "; increase the period L");
    }
    if (opts.refine) {
        const Lattice fine(lat.dim(), lat.spacing() / 2.0, lat.period());
        const Schedule sched_h =
            Schedule::with_auto_steps(sched.start, sched.end, k, fine);
        const double c_h = fit_on(fine, sched_h, nullptr);
        Schedule sched_tau = sched;
        sched_tau.steps *= 2;
        const double c_tau = fit_on(lat, sched_tau, nullptr);
        rep.refinement_drift =
            std::max(std::abs(c_h - rep.fitted_constant),
                     std::abs(c_tau - rep.fitted_constant)) /
            rep.fitted_constant;
    }
    rep.pass = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0 &&
               (!opts.refine || rep.refinement_drift < opts.drift_tolerance);
    return rep;
}

OndiagReport verify_ondiag(const JumpKernel& k, const Lattice& lat, double eta,
                           const std::vector<double>& dts, int source,
                           double trunc_rho, const VerifyOptions& opts) {
    if (dts.empty()) throw std::invalid_argument("verify: empty sweep");
    const double alpha = k.params.alpha;
    const int d = lat.dim();

    auto diag_products = [&](const JumpKernel& kernel, const Lattice& grid,
                             int src) {
        std::vector<double> out;
        for (double dt : dts) {
            Schedule sch = Schedule::with_auto_steps(eta, eta + dt, kernel, grid);
            GridField p = fundamental_solution(kernel, grid, sch, src);
            out.push_back(p.values[static_cast<size_t>(src)] *
                          std::pow(dt, d / alpha));
        }
        return out;
    };

    OndiagReport rep;
    rep.dts = dts;
    rep.diag_products = diag_products(k, lat, source);
    rep.fitted_constant = *std::max_element(rep.diag_products.begin(),
                                            rep.diag_products.end());
    for (size_t i = 0; i + 1 < rep.diag_products.size(); ++i) {
        rep.selfsim_max_dev = std::max(
            rep.selfsim_max_dev,
            std::abs(rep.diag_products[i + 1] - rep.diag_products[i]) /
                rep.diag_products[i]);
    }
    if (opts.refine) {
        const Lattice fine(lat.dim(), lat.spacing() / 2.0, lat.period());
        const std::vector<double> fine_prods =
            diag_products(k, fine, map_cell(lat, source, fine));
        const double c_fine =
            *std::max_element(fine_prods.begin(), fine_prods.end());
        rep.refinement_drift =
            std::abs(c_fine - rep.fitted_constant) / rep.fitted_constant;
    }
    if (trunc_rho > 0.0) {
        const JumpKernel kt = truncate(k, trunc_rho);
        const std::vector<double> trunc_prods = diag_products(kt, lat, source);
        for (size_t i = 0; i < dts.size(); ++i) {
            const double excess =
                std::log(trunc_prods[i] / rep.fitted_constant);
            rep.fitted_chat = std::max(
                rep.fitted_chat,
                excess * std::pow(trunc_rho, alpha) / dts[i]);
        }
    }
    rep.pass = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0 &&
               (!opts.refine || rep.refinement_drift < opts.drift_tolerance);
    return rep;
}

MeyerReport verify_meyer(const JumpKernel& k, const Lattice& lat,
                         const Schedule& sched,
                         const std::vector<double>& rhos, int source) {
    if (rhos.empty()) throw std::invalid_argument("verify: empty rho sweep");
    for (double rho : rhos) {
        // between L/4 and the diameter the comparison is wrap-contaminated;
        // at or beyond the diameter the truncation is a no-op and both fits
        // are exactly zero, which is a meaningful degenerate case
        if (rho >= lat.period() / 4.0 && rho < lat.diameter()) {
            throw std::invalid_argument("verify: rho must stay below L/4");
        }
    }
    const double alpha = k.params.alpha;
    const int d = lat.dim();
    const double dt = sched.end - sched.start;

    auto fits_for = [&](const Schedule& sch, double rho, long long* excluded) {
        GridField p = fundamental_solution(k, lat, sch, source);
        GridField pr = fundamental_solution(truncate(k, rho), lat, sch, source);
        double c1 = 0.0, c2 = 0.0;
        for (int i = 0; i < lat.cell_count(); ++i) {
            const size_t ui = static_cast<size_t>(i);
            const double surplus = p.values[ui] - pr.values[ui];
            if (surplus > 0.0) {
                c1 = std::max(c1, surplus * std::pow(rho, d + alpha) / dt);
            }
            if (p.values[ui] > 1e-300 && pr.values[ui] > 1e-300) {
                c2 = std::max(c2, std::log(pr.values[ui] / p.values[ui]) *
                                      std::pow(rho, alpha) / dt);
            } else if (excluded != nullptr) {
                ++*excluded;
            }
        }
        return std::pair<double, double>{c1, c2};
    };

    MeyerReport rep;
    rep.rhos = rhos;
    for (double rho : rhos) {
        long long excluded = 0;
        auto [c1, c2] = fits_for(sched, rho, &excluded);
        rep.c1.push_back(c1);
        rep.c2.push_back(c2);
        rep.excluded.push_back(excluded);
    }
    rep.c1_max_over_median = max_over_median(rep.c1);
    rep.c2_max_over_median = max_over_median(rep.c2);

    Schedule sched_tau = sched;
    sched_tau.steps *= 2;
    auto [c1_fine, c2_fine] = fits_for(sched_tau, rhos.front(), nullptr);
    (void)c1_fine;
    rep.c2_tau_drift = rep.c2.front() > 0.0
                           ? (c2_fine - rep.c2.front()) / rep.c2.front()
                           : 0.0;

    const bool finite =
        std::all_of(rep.c1.begin(), rep.c1.end(),
                    [](double c) { return std::isfinite(c); }) &&
        std::all_of(rep.c2.begin(), rep.c2.end(),
                    [](double c) { return std::isfinite(c); });
    rep.pass = finite && rep.c1_max_over_median <= 10.0 &&
               rep.c2_max_over_median <= 10.0 && rep.c2_tau_drift <= 0.2;
    return rep;
}

BoundReport verify_offdiag_trunc(const JumpKernel& k, const Lattice& lat,
                                 const Schedule& sched, double rho, double nu,
                                 int source, const VerifyOptions& opts) {
    const double alpha = k.params.alpha;
    const int d = lat.dim();
    const double dt = sched.end - sched.start;
    if (nu <= 1.0) throw std::invalid_argument("verify: nu must exceed 1");
    if (dt > std::pow(rho, alpha) / (4.0 * nu) * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "verify refused: s - eta exceeds rho^alpha/(4 nu)");
    }
    const JumpKernel kt = truncate(k, rho);

    auto reference = [&](double dist) {
        const double expo = -dist / (12.0 * rho) + 0.5 + d / (2.0 * alpha);
        return std::pow(dt, -static_cast<double>(d) / alpha) *
               std::pow(2.0, dist / (12.0 * rho)) *
               std::pow(std::pow(rho, alpha) / (nu * dt), expo);
    };

    auto fit_on = [&](const Lattice& grid, const Schedule& sch,
                      BoundReport* rep) {
        const int src = map_cell(lat, source, grid);
        GridField p = fundamental_solution(kt, grid, sch, src);
        RatioFit fit = fit_ratio(grid, p.values, src, reference,
                                 rep != nullptr && opts.record_profile);
        if (rep != nullptr) {
            rep->wraparound_indicator = fit.wrap_mass;
            rep->max_ratio_cell = fit.cell;
            rep->max_ratio_distance = fit.distance;
            rep->profile = std::move(fit.profile);
        }
        return fit.constant;
    };

    BoundReport rep;
    rep.bound_name = "offdiag-truncated";
    rep.params = {{"alpha", alpha}, {"d", static_cast<double>(d)},
                  {"dt", dt},       {"rho", rho},
                  {"nu", nu},       {"h", lat.spacing()}};
    rep.fitted_constant = fit_on(lat, sched, &rep);
    if (opts.refine) {
        const Lattice fine(lat.dim(), lat.spacing() / 2.0, lat.period());
        const Schedule sched_h =
            Schedule::with_auto_steps(sched.start, sched.end, kt, fine);
        const double c_h = fit_on(fine, sched_h, nullptr);
        Schedule sched_tau = sched;
        sched_tau.steps *= 2;
        const double c_tau = fit_on(lat, sched_tau, nullptr);
        rep.refinement_drift =
            std::max(std::abs(c_h - rep.fitted_constant),
                     std::abs(c_tau - rep.fitted_constant)) /
            rep.fitted_constant;
    }
    rep.pass = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0 &&
               (!opts.refine || rep.refinement_drift < opts.drift_tolerance);
    return rep;
}

LinftyL2Report verify_linfty_l2(const JumpKernel& k_base, const Lattice& lat,
                                double eta, double t0, int source, int x0,
                                const std::vector<CylinderPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("verify: empty cylinder sweep");
    const double alpha = k_base.params.alpha;
    const int d = lat.dim();

    LinftyL2Report rep;
    for (const CylinderPair& pair : pairs) {
        const double R = pair.R;
        const double rho = pair.rho;
        if (R <= 0.0 || R > rho / 2.0 || std::pow(R, alpha) > t0) {
            throw std::invalid_argument(
                "verify refused: cylinder radius must satisfy R <= rho/2 and "
                "R^alpha <= t0");
        }
        if (t0 - std::pow(R, alpha) < eta) {
            throw std::invalid_argument(
                "verify refused: cylinder extends before the schedule start");
        }
        const JumpKernel kt = truncate(k_base, rho);
        const Schedule sched = Schedule::with_auto_steps(eta, t0, kt, lat);

        const std::vector<int> inner = lat.ball(x0, R / 2.0);
        const std::vector<int> l2ball = lat.ball(x0, 2.0 * rho);
        const double t_lo_full = t0 - std::pow(R, alpha);
        const double t_lo_half = t0 - std::pow(R / 2.0, alpha);

        double sup_half = 0.0;
        double sup_l2 = 0.0;
        GridField u0(lat, eta);
        u0.values[static_cast<size_t>(source)] = 1.0 / lat.cell_volume();
        evolve(kt, lat, sched, u0,
               [&](int, double t, const std::vector<double>& u) {
                   if (t > t_lo_full) {
                       double ss = 0.0;
                       for (int i : l2ball) {
                           const double v = u[static_cast<size_t>(i)];
                           ss += v * v;
                       }
                       sup_l2 = std::max(sup_l2,
                                         std::sqrt(ss * lat.cell_volume()));
                   }
                   if (t > t_lo_half) {
                       for (int i : inner) {
                           sup_half = std::max(sup_half, u[static_cast<size_t>(i)]);
                       }
                   }
               });

        const double shape = std::pow(std::pow(rho / R, alpha), d / (2.0 * alpha)) *
                             std::pow(R, -d / 2.0);
        rep.pairs.push_back(pair);
        rep.fitted.push_back(sup_half / (shape * sup_l2));
    }
    rep.max_over_median = max_over_median(rep.fitted);
    rep.pass = rep.max_over_median <= 10.0;
    return rep;
}

LiYauLocalReport li_yau_local_check(const std::vector<double>& ts,
                                    const std::vector<double>& xs, int d) {
    if (d != 1 && d != 2) throw std::invalid_argument("li-yau: dim must be 1 or 2");
    auto log_w = [&](double t, double x0, double x1) {
        const double r2 = x0 * x0 + x1 * x1;
        return -(d / 2.0) * std::log(t) - r2 / (4.0 * t);
    };
    // |grad log w|^2 - d/(2t) - d/dt log w with centered differences.
    auto residual_at = [&](double t, double r, double delta) {
        const double dt_step = delta * t;
        const double dx_step = delta * std::max(1.0, std::abs(r));
        const double gx =
            (log_w(t, r + dx_step, 0.0) - log_w(t, r - dx_step, 0.0)) /
            (2.0 * dx_step);
        double grad_sq = gx * gx;
        if (d == 2) {
            const double gy =
                (log_w(t, r, dx_step) - log_w(t, r, -dx_step)) / (2.0 * dx_step);
            grad_sq += gy * gy;
        }
        const double wt =
            (log_w(t + dt_step, r, 0.0) - log_w(t - dt_step, r, 0.0)) /
            (2.0 * dt_step);
        return std::abs(grad_sq - d / (2.0 * t) - wt);
    };

    LiYauLocalReport rep;
    double coarse = 0.0, finer = 0.0;
    for (double t : ts) {
        for (double x : xs) {
            rep.max_residual = std::max(rep.max_residual, residual_at(t, x, 1e-5));
            coarse = std::max(coarse, residual_at(t, x, 2e-3));
            finer = std::max(finer, residual_at(t, x, 1e-3));
        }
    }
    rep.fd_convergence_rate = finer > 0.0 ? std::log2(coarse / finer) : 2.0;
    rep.pass = rep.max_residual <= 1e-8;
    return rep;
}

LiYauNonlocalReport li_yau_nonlocal_violation(double alpha, int d,
                                              const std::vector<double>& ts) {
    if (d != 1) {
        throw std::invalid_argument(
            "li-yau violation: only dimension 1 is implemented");
    }
    const double c = 1.0; // unit symbol exp(-t |xi|^alpha)
    LiYauNonlocalReport rep;
    rep.ts = ts;
    bool ok = true;
    for (double t : ts) {
        const double w0 = stable_density_1d(alpha, c, t, 0.0);
        const double wt0 = stable_density_1d_dt(alpha, c, t, 0.0);
        const double res = std::abs(d / (alpha * t) + wt0 / w0);
        const double gamma = carre_du_champ_sqrt_density_1d(alpha, c, t);
        const double floor = 1e-6 * w0 / t;
        rep.identity_residuals.push_back(res);
        rep.gammas.push_back(gamma);
        rep.gamma_floors.push_back(floor);
        ok = ok && res <= 1e-6 && gamma >= floor;
    }
    // Radial identity (d/(alpha t)) w + dw/dt = -(|x|/(alpha t)) dw/d|x|,
    // checked off-center with quadrature-backed derivatives.
    for (double t : ts) {
        for (double x : {0.5, 1.0, 2.0}) {
            const double w = stable_density_1d(alpha, c, t, x);
            const double wt = stable_density_1d_dt(alpha, c, t, x);
            const double wx = stable_density_1d_dx(alpha, c, t, x);
            const double lhs = (d / (alpha * t)) * w + wt;
            const double rhs = -(x / (alpha * t)) * wx;
            const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                           std::abs(w / t)});
            rep.radial_identity_residual = std::max(
                rep.radial_identity_residual, std::abs(lhs - rhs) / scale);
        }
    }
    ok = ok && rep.radial_identity_residual <= 1e-6;
    rep.pass = ok;
    return rep;
}

} // namespace heatlab
