#ifndef HEATLAB_ARONSON_HPP
#define HEATLAB_ARONSON_HPP

// Exponential-weight machinery: the truncated carre du champ, the weight
//   H(t,x) = b(t)^{-max(|x-y|/(3 rho), 1)},  b(t) = rho^alpha / (nu [t]),
//   [t] = 2(s - eta) - (t - eta),
// the differential inequality C Gamma(H^{1/2}, H^{1/2}) <= -dH/dt, and the
// weighted L^2 estimate it implies for solutions under a rho-truncated kernel.

#include "heatlab/common.hpp"
#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"
#include "heatlab/semigroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heatlab {

struct WeightParams {
    Point center{};   // y, the point the weight decays away from
    double rho = 0.0; // truncation radius, > 0
    double eta = 0.0; // initial time
    double s = 0.0;   // final time, > eta
    double nu = 0.0;  // weight steepness, > 1
    double alpha = 0.0; // jump index matching the kernel, in (0, 2)

    // Enforces nu > 1, 0 < alpha < 2, eta < s, and the smallness condition
    // s - eta <= rho^alpha / (4 nu); throws std::invalid_argument otherwise.
    void validate() const;

    // The time bracket [t] = 2(s - eta) - (t - eta), positive on [eta, s].
    double bracket(double t) const;

    // The base b(t) = rho^alpha / (nu [t]); > 1 whenever the smallness
    // condition holds and t is in [eta, s].
    double base(double t) const;

    // The exponent e(x) = max(dist(x, y)/(3 rho), 1) for torus distance dist.
    double exponent(const Lattice& lat, const Point& x) const;
};

// Truncated carre du champ
//   Gamma_rho(f, f)(x) = sum_{0 < dist(x, z) <= rho} (f(x) - f(z))^2
//                        * dist(x, z)^{-d-alpha} * h^d,
// with torus minimum-image distances. Requires rho < L/2 so the ball does
// not wrap onto itself.
GridField carre_du_champ_trunc(const Lattice& lat, const GridField& f,
                               double alpha, double rho);

// Pointwise evaluation of H(t, .) on the lattice. Requires t in [eta, s] and
// b(t) > 1 (throws std::invalid_argument otherwise). Values lie in (0, 1).
GridField weight_H(const Lattice& lat, const WeightParams& wp, double t);

// Analytic time derivative: dH/dt = -H(t,x) e(x) / [t], branch-independent
// because the inner branch is the outer formula with exponent frozen at 1.
GridField weight_H_dt(const Lattice& lat, const WeightParams& wp, double t);

struct HInequalityReport {
    WeightParams params;
    double C = 0.0;
    // slack(t, x) = -dH/dt - C * Gamma_rho(H^{1/2}, H^{1/2}) at (t, x). The
    // inequality holds where slack >= 0.
    double min_slack = 0.0;
    double scale = 0.0; // max |dH/dt| over all samples, sets the tolerance
    double worst_time = 0.0;
    int worst_cell = -1;
    // Case split along the proof: dist <= 2 rho (Gamma vanishes there),
    // 2 rho < dist <= 3 rho, and dist > 3 rho.
    double min_slack_case1 = 0.0;
    double min_slack_case2 = 0.0;
    double min_slack_case3 = 0.0;
    long long cells_case1 = 0;
    long long cells_case2 = 0;
    long long cells_case3 = 0;
    double max_gamma_case1 = 0.0; // should be exactly zero
    bool pass = false;
};

// Checks C * Gamma_rho(H^{1/2}, H^{1/2}) <= -dH/dt at every lattice cell and
// 64 uniformly spaced times in [eta, s]. Passes iff the minimum slack is
// >= -1e-10 * scale.
HInequalityReport check_H_inequality(const Lattice& lat, const WeightParams& wp,
                                     double C);

struct NuSearchResult {
    bool found = false;
    double nu = 0.0;
    HInequalityReport report; // report at the returned nu (when found)
    bool monotonicity_checked = false;
    bool monotonicity_holds = false; // 2 nu also passes (same eta, s, rho)
    std::vector<double> tried; // candidates examined, in order
};

// Doubling search nu in {2, 4, ..., 2^20} for the smallest candidate at which
// check_H_inequality passes with the given C. Each candidate is tested with
// its own final time s = eta + rho^alpha / (8 nu), which satisfies the
// smallness condition with a factor-2 margin. When a candidate passes, the
// check is re-run at 2 nu with the passing candidate's (eta, s) schedule as a
// monotonicity spot check.
NuSearchResult search_nu(const Lattice& lat, const Point& center, double rho,
                         double eta, double alpha, double C);

struct WeightedEstimateReport {
    WeightParams params;
    double C = 0.0;
    double W_initial = 0.0;
    double W_max = 0.0;
    double worst_time = 0.0;
    bool h_inequality_certified = false;
    bool pass = false;
};

// Evolves u0 under the rho-truncated kernel and tracks the weighted energy
//   W(t) = sum_x H(t, x) u(t, x)^2 h^d
// at every step boundary. Requires: the kernel truncated at wp.rho, the
// schedule matching (wp.eta, wp.s), and the H-inequality certified at the
// given C (otherwise throws std::runtime_error with the failing slack).
// Passes iff max_t W(t) <= W(eta) * (1 + 1e-6).
WeightedEstimateReport check_weighted_estimate(const JumpKernel& k_trunc,
                                               const Lattice& lat,
                                               const Schedule& sched,
                                               const GridField& u0,
                                               const WeightParams& wp,
                                               double C);

struct DecayReport {
    double sigma = 0.0;
    double rho = 0.0;
    double nu = 0.0;
    double value_at_center = 0.0; // |u(s, y)|
    double rhs_without_constant = 0.0;
    double ratio = 0.0;
    bool pass = true; // single-sigma runs always pass; sweeps decide stability
};

// Bounds |u(s, y)| for data vanishing on B_sigma(y) against the decay shape
//   (s-eta)^{-d/(2 alpha)} 2^{sigma/(6 rho)}
//     * (rho^alpha / (nu (s-eta)))^{-sigma/(6 rho) + 1/2 + d/(2 alpha)}
//     * ||u0||_{L^2}.
// u0 is the indicator of the complement of B_sigma(y). Requires
// s - eta <= rho^alpha/(4 nu) and rho = the kernel's truncation radius.
DecayReport decay_estimate_check(const JumpKernel& k_trunc, const Lattice& lat,
                                 const Schedule& sched, double sigma,
                                 const Point& center, double nu);

struct DecaySweepReport {
    std::vector<DecayReport> runs;
    double max_over_median = 0.0;
    bool pass = false; // max ratio / median ratio <= 50 across the sweep
};

DecaySweepReport decay_estimate_sweep(const JumpKernel& k_trunc,
                                      const Lattice& lat, const Schedule& sched,
                                      const std::vector<double>& sigmas,
                                      const Point& center, double nu);

} // namespace heatlab

#endif
