#ifndef HEATLAB_SEMIGROUP_HPP
#define HEATLAB_SEMIGROUP_HPP

#include <Eigen/Dense>
#include <functional>

#include "heatlab/generator.hpp"
#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"

namespace heatlab {

struct Schedule {
    double start = 0.0;  // eta
    double end = 1.0;    // s
    int steps = 1;       // m

    double tau() const { return (end - start) / steps; }
    void validate(double horizon_T) const;
    // Step count chosen so that tau <= h^alpha / 4 for the active kernel.
    static Schedule with_auto_steps(double eta, double s, const JumpKernel& k,
                                    const Lattice& lat);
};

// Called after every backward-Euler step with the step's end time and state.
using StepCallback = std::function<void(int step, double t, const std::vector<double>& u)>;

// Backward Euler, kernel frozen at each step's end time. Conserves mass exactly
// (unit column sums) and preserves nonnegativity (M-matrix inverse).
GridField evolve(const JumpKernel& k, const Lattice& lat, const Schedule& sched,
                 const GridField& u0, const StepCallback& callback = nullptr);

// Discrete heat kernel slice p(., s; x_source, eta): evolve the unit-mass cell
// indicator u0 = 1_source / h^d.
GridField fundamental_solution(const JumpKernel& k, const Lattice& lat,
                               const Schedule& sched, int source);

// Dense propagator: matrix of densities p(y_i, s; x_j, eta); column sums times
// h^d equal 1. Materialized column by column (parallel over sources).
struct Propagator {
    Lattice lattice;
    Schedule schedule;
    std::string kernel_tag;
    Eigen::MatrixXd matrix;
};

Propagator build_propagator(const JumpKernel& k, const Lattice& lat, const Schedule& sched,
                            int dense_cap = kGeneratorCellCap);

// Reference propagator for time-independent kernels: exp((s-eta) G) / h^d via
// dense symmetric eigendecomposition. Test oracle, O(N^3).
Eigen::MatrixXd dense_exponential_propagator(const JumpKernel& k, const Lattice& lat,
                                             double eta, double s);

struct MaxPrincipleReport {
    double max_positive_excursion = 0.0;
    double scale = 0.0;  // max |u0|
    bool pass = false;
};

// Evolves u0 <= 0 and reports the largest positive value seen at any step.
MaxPrincipleReport check_maximum_principle(const JumpKernel& k, const Lattice& lat,
                                           const Schedule& sched, const GridField& u0);

} // namespace heatlab

#endif
