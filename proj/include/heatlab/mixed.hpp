#ifndef HEATLAB_MIXED_HPP
#define HEATLAB_MIXED_HPP

// Kernels driven by a scale function phi: k(x,y) = Lambda / (omega_d r^d phi(r))
// with r = |x-y| and omega_d the unit-ball volume, their integral estimates,
// and the corresponding heat-kernel reference
//   min( (omega_d phi^{-1}(dt)^d)^{-1}, dt / (omega_d r^d phi(r)) ).

#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"
#include "heatlab/semigroup.hpp"
#include "heatlab/verify.hpp"

#include <string>
#include <vector>

namespace heatlab {

struct ScaleFunction {
    std::string kind;   // pure | two-regime
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double C_scale = 1.0;

    double evaluate(double r) const;
    double inverse(double value) const;
};

// pure: phi(r) = r^alpha (pass alpha as both exponents or via alpha1).
// two-regime: phi(r) = r^alpha1 for r <= 1, r^alpha2 for r > 1 (continuous).
ScaleFunction make_phi(const std::string& kind, double alpha1, double alpha2);

// Symmetric time-independent kernel saturating its envelope
// Lambda (omega_d r^d phi(r))^{-1}. params.alpha is set to phi.alpha1 (the
// near-origin exponent, which governs the time-step rule).
JumpKernel make_mixed_kernel(const ScaleFunction& phi, double Lambda, int d);

struct MixedIntegralsReport {
    std::vector<double> radii;
    std::vector<double> second_moment;  // int_{B_R} r^2 k dy
    std::vector<double> tail_mass;      // int_{B_R^c} k dy
    std::vector<double> c1;             // second_moment * phi(R) / R^2
    std::vector<double> c2;             // tail_mass * phi(R)
    double c1_max_over_median = 0.0;
    double c2_max_over_median = 0.0;
    bool pass = false;
};

// Radial quadrature of the two compensating integrals across an R sweep,
// normalized by the claimed shapes R^2/phi(R) and 1/phi(R). Passes iff both
// fit families are finite with max/median <= 10.
MixedIntegralsReport check_mixed_integrals(const ScaleFunction& phi,
                                           double Lambda, int d,
                                           const std::vector<double>& radii);

// Heat-kernel reference shape for scale-function kernels; dt > 0 required.
double reference_mixed(double dist, double dt, const ScaleFunction& phi, int d);

struct MixedBoundReport {
    BoundReport bound;      // ratio fit against reference_mixed
    double fitted_C2 = 0.0; // sup over the half cylinder * omega_d R^d (mass 1)
    bool pass = false;
};

// Ratio-fit of the heat kernel against reference_mixed (fit-then-refine, as
// the power-bound check) plus the local-boundedness-from-mass inequality:
// with R = phi^{-1}(s - eta), sup of p over (s - phi(R/2), s] x B_{R/2}(source)
// is bounded by C2 / (omega_d R^d).
MixedBoundReport verify_mixed(const JumpKernel& k, const Lattice& lat,
                              const Schedule& sched,
                              const std::vector<int>& sources,
                              const ScaleFunction& phi,
                              const VerifyOptions& opts = {});

} // namespace heatlab

#endif
