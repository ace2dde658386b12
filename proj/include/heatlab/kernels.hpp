#ifndef HEATLAB_KERNELS_HPP
#define HEATLAB_KERNELS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "heatlab/common.hpp"
#include "heatlab/lattice.hpp"

namespace heatlab {

struct KernelParams {
    double alpha = 1.0;       // jump index in (0,2)
    double Lambda = 1.0;      // pointwise upper-bound constant
    double lambda = 1.0;      // claimed coercivity constant
    double horizon_T = 2.0;   // final time
    int dim = 1;

    void validate() const;
};

// Symmetric jumping kernel k(t;x,y). Presets are functions of (t, y-x) only,
// which the evolution engine exploits (circulant structure on the torus).
struct JumpKernel {
    KernelParams params;
    std::string kind;                 // fractional | cone | time-oscillating | mixed-phi | custom
    std::string tag;                  // provenance string for reports
    double trunc_radius = 0.0;        // 0 means untruncated
    bool time_independent = true;
    bool translation_invariant = true;

    // Intensity as a function of time and displacement (before truncation).
    std::function<double(double t, const Point& diff)> profile;
    // Reference envelope the kernel is supposed to satisfy pointwise; defaults
    // to Lambda |diff|^{-d-alpha}, mixed kernels install their own.
    std::function<double(const Point& diff)> envelope;

    double evaluate_diff(double t, const Point& diff) const;
    double evaluate(double t, const Point& x, const Point& y) const {
        return evaluate_diff(t, sub(y, x));
    }
};

struct PresetOptions {
    double cone_aperture = M_PI / 4.0;  // half-aperture of the double cone
    Point cone_axis = {1.0, 0.0};
    double oscillation_period = 1.0;
};

JumpKernel make_preset(const std::string& kind, const KernelParams& params,
                       const PresetOptions& options = {});

// k_rho(t;x,y) = k(t;x,y) 1{|x-y| <= rho}. Idempotent; tightens an existing radius.
JumpKernel truncate(const JumpKernel& k, double rho);

struct UpperBoundReport {
    double max_ratio = 0.0;
    double worst_t = 0.0;
    Point worst_x{}, worst_y{};
    bool pass = false;
};

// Deterministic quasi-random sampling of (t,x,y); ratio of k against its envelope.
UpperBoundReport check_upper_bound(const JumpKernel& k, int samples);

// Smallest generalized Rayleigh quotient of the discrete energy form over the
// Gagliardo seminorm on the discrete ball of the given radius (constants excluded).
// Dense generalized eigensolve up to 2000 cells in the ball, randomized quotient
// minimization (fixed seed) beyond that.
double estimate_coercivity(const JumpKernel& k, const Lattice& lat, double ball_radius,
                           double t);

} // namespace heatlab

#endif
