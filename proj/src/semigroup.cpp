#include "heatlab/semigroup.hpp"

#include <cmath>

#include "heatlab/circulant.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab {

void Schedule::validate(double horizon_T) const {
    if (!(start >= 0.0)) throw std::invalid_argument("schedule start must be >= 0");
    if (!(end > start)) throw std::invalid_argument("schedule end must exceed start");
    if (end > horizon_T) throw std::invalid_argument("schedule end exceeds kernel horizon");
    if (steps < 1) throw std::invalid_argument("schedule needs at least one step");
}

Schedule Schedule::with_auto_steps(double eta, double s, const JumpKernel& k,
                                   const Lattice& lat) {
    const double tau_max = std::pow(lat.spacing(), k.params.alpha) / 4.0;
    const int m = std::max(1, static_cast<int>(std::ceil((s - eta) / tau_max)));
    return Schedule{eta, s, m};
}

namespace {

void check_input_field(const GridField& u0, const Lattice& lat) {
    if (!(u0.lattice == lat)) throw std::invalid_argument("initial field lattice mismatch");
    for (double v : u0.values)
        if (!std::isfinite(v)) throw std::invalid_argument("initial field contains NaN/Inf");
}

// Dense backward-Euler path for kernels without translation invariance.
GridField evolve_dense(const JumpKernel& k, const Lattice& lat, const Schedule& sched,
                       const GridField& u0, const StepCallback& callback) {
    const int N = lat.cell_count();
    const double tau = sched.tau();
    Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(u0.values.data(), N);
    Eigen::LDLT<Eigen::MatrixXd> factor;
    bool have_factor = false;
    std::vector<double> snapshot(static_cast<size_t>(N));
    for (int nstep = 1; nstep <= sched.steps; ++nstep) {
        const double t_end = sched.start + nstep * tau;
        if (!have_factor || !k.time_independent) {
            const Generator g = assemble_generator(k, lat, t_end);
            factor.compute(Eigen::MatrixXd::Identity(N, N) - tau * g.matrix);
            have_factor = true;
        }
        u = factor.solve(u);
        if (callback) {
            Eigen::Map<Eigen::VectorXd>(snapshot.data(), N) = u;
            callback(nstep, t_end, snapshot);
        }
    }
    GridField out(lat, sched.end);
    Eigen::Map<Eigen::VectorXd>(out.values.data(), N) = u;
    return out;
}

} // namespace

GridField evolve(const JumpKernel& k, const Lattice& lat, const Schedule& sched,
                 const GridField& u0, const StepCallback& callback) {
    sched.validate(k.params.horizon_T);
    check_input_field(u0, lat);
    if (!k.translation_invariant) return evolve_dense(k, lat, sched, u0, callback);

    CirculantStepper stepper(k, lat);
    GridField out(lat, sched.end);
    out.values = u0.values;
    const double tau = sched.tau();
    for (int nstep = 1; nstep <= sched.steps; ++nstep) {
        const double t_end = sched.start + nstep * tau;
        stepper.step(out.values, t_end, tau);
        if (callback) callback(nstep, t_end, out.values);
    }
    return out;
}

GridField fundamental_solution(const JumpKernel& k, const Lattice& lat,
                               const Schedule& sched, int source) {
    if (source < 0 || source >= lat.cell_count())
        throw std::invalid_argument("source cell out of range");
    GridField u0(lat, sched.start);
    u0.values[static_cast<size_t>(source)] = 1.0 / lat.cell_volume();
    return evolve(k, lat, sched, u0);
}

Propagator build_propagator(const JumpKernel& k, const Lattice& lat, const Schedule& sched,
                            int dense_cap) {
    const int N = lat.cell_count();
    if (N > dense_cap)
        throw std::runtime_error(
            "cell count exceeds dense propagator cap; use fundamental_solution per source");
    sched.validate(k.params.horizon_T);
    Propagator prop{lat, sched, k.tag, Eigen::MatrixXd(N, N)};
    parallel_for(N, [&](int j) {
        const GridField col = fundamental_solution(k, lat, sched, j);
        for (int i = 0; i < N; ++i) prop.matrix(i, j) = col.values[static_cast<size_t>(i)];
    });
    return prop;
}

Eigen::MatrixXd dense_exponential_propagator(const JumpKernel& k, const Lattice& lat,
                                             double eta, double s) {
    if (!k.time_independent)
        throw std::invalid_argument("matrix exponential oracle needs a time-independent kernel");
    const Generator g = assemble_generator(k, lat, s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix);
    const Eigen::VectorXd expd = ((s - eta) * es.eigenvalues().array()).exp();
    Eigen::MatrixXd P =
        es.eigenvectors() * expd.asDiagonal() * es.eigenvectors().transpose();
    return P / lat.cell_volume();
}

MaxPrincipleReport check_maximum_principle(const JumpKernel& k, const Lattice& lat,
                                           const Schedule& sched, const GridField& u0) {
    for (double v : u0.values)
        if (v > 0.0) throw std::invalid_argument("maximum-principle check needs u0 <= 0");
    MaxPrincipleReport rep;
    for (double v : u0.values) rep.scale = std::max(rep.scale, std::abs(v));
    evolve(k, lat, sched, u0, [&](int, double, const std::vector<double>& u) {
        for (double v : u) rep.max_positive_excursion = std::max(rep.max_positive_excursion, v);
    });
    rep.pass = rep.max_positive_excursion <= 1e-14 * std::max(rep.scale, 1e-300);
    return rep;
}

} // namespace heatlab
