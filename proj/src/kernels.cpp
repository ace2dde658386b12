#include "heatlab/kernels.hpp"

#include <Eigen/Dense>
#include <random>

namespace heatlab {

void KernelParams::validate() const {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha out of (0,2)");
    if (!(Lambda > 0.0)) throw std::invalid_argument("Lambda must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(horizon_T > 0.0)) throw std::invalid_argument("horizon_T must be positive");
    if (lambda > Lambda) throw std::invalid_argument("lambda cannot exceed Lambda");
    if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
}

double JumpKernel::evaluate_diff(double t, const Point& diff) const {
    const double r = norm(diff);
    if (r == 0.0) throw std::domain_error("kernel not defined on the diagonal");
    if (trunc_radius > 0.0 && r > trunc_radius) return 0.0;
    return profile(t, diff);
}

namespace {

std::function<double(const Point&)> fractional_envelope(const KernelParams& p) {
    const double Lambda = p.Lambda;
    const double expo = p.dim + p.alpha;
    return [Lambda, expo](const Point& diff) { return Lambda * std::pow(norm(diff), -expo); };
}

} // namespace

JumpKernel make_preset(const std::string& kind, const KernelParams& params,
                       const PresetOptions& options) {
    params.validate();
    JumpKernel k;
    k.params = params;
    k.kind = kind;
    k.envelope = fractional_envelope(params);
    const double Lambda = params.Lambda;
    const double expo = params.dim + params.alpha;

    if (kind == "fractional") {
        k.profile = [Lambda, expo](double, const Point& diff) {
            return Lambda * std::pow(norm(diff), -expo);
        };
        k.tag = "fractional";
    } else if (kind == "cone") {
        const double aperture = options.cone_aperture;
        if (!(aperture > 0.0 && aperture < M_PI / 2.0))
            throw std::invalid_argument("cone aperture out of (0, pi/2)");
        Point axis = options.cone_axis;
        const double an = norm(axis);
        if (!(an > 0.0)) throw std::invalid_argument("cone axis must be nonzero");
        axis = {axis[0] / an, axis[1] / an};
        const double cos_ap = std::cos(aperture);
        k.profile = [Lambda, expo, axis, cos_ap](double, const Point& diff) {
            const double r = norm(diff);
            const double c = std::abs(diff[0] * axis[0] + diff[1] * axis[1]) / r;
            return c >= cos_ap ? Lambda * std::pow(r, -expo) : 0.0;
        };
        k.tag = "cone";
    } else if (kind == "time-oscillating") {
        const double period = options.oscillation_period;
        if (!(period > 0.0)) throw std::invalid_argument("oscillation period must be positive");
        k.profile = [Lambda, expo, period](double t, const Point& diff) {
            return Lambda * (0.5 + 0.25 * std::sin(2.0 * M_PI * t / period)) *
                   std::pow(norm(diff), -expo);
        };
        k.time_independent = false;
        k.tag = "time-oscillating";
    } else {
        throw std::invalid_argument("unknown kernel preset: " + kind);
    }
    return k;
}

JumpKernel truncate(const JumpKernel& k, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("truncation radius must be positive");
    JumpKernel out = k;
    out.trunc_radius = k.trunc_radius > 0.0 ? std::min(k.trunc_radius, rho) : rho;
    out.tag = k.tag + "|rho=" + std::to_string(out.trunc_radius);
    return out;
}

namespace {

// Van der Corput radical inverse; cheap deterministic low-discrepancy driver.
double radical_inverse(unsigned n, unsigned base) {
    double inv = 1.0 / base, f = inv, x = 0.0;
    while (n > 0) {
        x += (n % base) * f;
        n /= base;
        f *= inv;
    }
    return x;
}

} // namespace

UpperBoundReport check_upper_bound(const JumpKernel& k, int samples) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    static const unsigned primes[5] = {2, 3, 5, 7, 11};
    UpperBoundReport rep;
    const int d = k.params.dim;
    const double box = 4.0;
    for (int s = 0; s < samples; ++s) {
        const unsigned n = static_cast<unsigned>(s) + 1;
        const double t = radical_inverse(n, primes[0]) * k.params.horizon_T;
        Point x{box * (radical_inverse(n, primes[1]) - 0.5) * 2.0,
                d == 2 ? box * (radical_inverse(n, primes[2]) - 0.5) * 2.0 : 0.0};
        Point y{box * (radical_inverse(n, primes[3]) - 0.5) * 2.0,
                d == 2 ? box * (radical_inverse(n, primes[4]) - 0.5) * 2.0 : 0.0};
        const Point diff = sub(y, x);
        const double r = norm(diff);
        if (r < 1e-6) continue;
        const double ref = k.envelope(diff);
        const double val = k.evaluate(t, x, y);
        const double ratio = val / ref;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_t = t;
            rep.worst_x = x;
            rep.worst_y = y;
        }
    }
    rep.pass = rep.max_ratio <= 1.0 + 1e-12;
    return rep;
}

namespace {

// Quadratic form matrices of the energy form and the Gagliardo seminorm
// restricted to a set of cells: v^T A v = sum_{a != b} (v_a - v_b)^2 w(a,b) h^{2d}.
Eigen::MatrixXd pair_form(const Lattice& lat, const std::vector<int>& cells,
                          const std::function<double(int, int)>& weight) {
    const int n = static_cast<int>(cells.size());
    const double h2d = lat.cell_volume() * lat.cell_volume();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double w = 2.0 * weight(cells[a], cells[b]) * h2d;  // ordered pair sum
            A(a, a) += w;
            A(b, b) += w;
            A(a, b) -= w;
            A(b, a) -= w;
        }
    }
    return A;
}

} // namespace

double estimate_coercivity(const JumpKernel& k, const Lattice& lat, double ball_radius,
                           double t) {
    if (!(ball_radius > 0.0) || 2.0 * ball_radius > lat.period())
        throw std::domain_error("ball does not fit in the lattice period");
    const int center = lat.flat_index(lat.cells_per_axis() / 2, lat.cells_per_axis() / 2);
    const std::vector<int> cells = lat.ball(center, ball_radius);
    const int n = static_cast<int>(cells.size());
    if (n < 2) throw std::domain_error("ball contains fewer than 2 cells");

    auto kernel_w = [&](int i, int j) {
        return k.evaluate_diff(t, lat.min_image(i, j));
    };
    const double gag_expo = lat.dim() + k.params.alpha;
    auto gagliardo_w = [&](int i, int j) {
        return std::pow(lat.distance(i, j), -gag_expo);
    };

    const Eigen::MatrixXd E = pair_form(lat, cells, kernel_w);
    const Eigen::MatrixXd S = pair_form(lat, cells, gagliardo_w);

    // Constants span the common null space of both forms; work on their complement.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
    Eigen::MatrixXd Qfull = qr.householderQ();
    Eigen::MatrixXd Q = Qfull.rightCols(n - 1);
    const Eigen::MatrixXd A = Q.transpose() * E * Q;
    const Eigen::MatrixXd B = Q.transpose() * S * Q;

    if (n <= 2000) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
        return std::max(0.0, es.eigenvalues().minCoeff());
    }

    // Randomized Rayleigh-quotient minimization: inverse-like power iteration on
    // the pencil (A, B) via gradient steps, fixed seed for reproducibility.
    std::mt19937 rng(0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n - 1);
    for (int i = 0; i < n - 1; ++i) v[i] = gauss(rng);
    Eigen::LDLT<Eigen::MatrixXd> Bf(B);
    double q = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd Av = A * v;
        Eigen::VectorXd Bv = B * v;
        q = v.dot(Av) / v.dot(Bv);
        Eigen::VectorXd grad = Av - q * Bv;
        if (grad.norm() <= 1e-13 * Av.norm()) break;
        v -= Bf.solve(grad);
        v /= v.norm();
    }
    return std::max(0.0, q);
}

} // namespace heatlab
