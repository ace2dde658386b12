#include "heatlab/stable.hpp"

#include "heatlab/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_cauchy(double alpha) { return std::abs(alpha - 1.0) < 1e-12; }

void check_args(double alpha, double t) {
    if (alpha <= 0.0 || alpha >= 2.0) {
        throw std::invalid_argument("stable density: alpha must lie in (0, 2)");
    }
    if (t <= 0.0) {
        throw std::invalid_argument("stable density: time must be positive");
    }
}

// Cutoff beyond which exp(-t c xi^alpha) is below 1e-18.
double frequency_cutoff(double alpha, double c, double t) {
    return std::pow(42.0 / (t * c), 1.0 / alpha);
}

} // namespace

double symbol_constant(int dim, double alpha, double Lambda) {
    if (dim != 1) {
        throw std::invalid_argument(
            "symbol_constant: only dimension 1 is implemented");
    }
    if (alpha <= 0.0 || alpha >= 2.0) {
        throw std::invalid_argument("symbol_constant: alpha must lie in (0, 2)");
    }
    // int_0^inf (1 - cos z) z^{-1-alpha} dz
    //   = Gamma(2 - alpha) cos(pi alpha / 2) / (alpha (1 - alpha)),
    // with the removable singularity at alpha = 1 equal to pi / 2.
    double base;
    if (std::abs(alpha - 1.0) < 1e-9) {
        base = kPi / 2.0;
    } else {
        base = std::tgamma(2.0 - alpha) * std::cos(kPi * alpha / 2.0) /
               (alpha * (1.0 - alpha));
    }
    return 2.0 * Lambda * base;
}

double stable_density_1d(double alpha, double c, double t, double x) {
    check_args(alpha, t);
    if (is_cauchy(alpha)) {
        const double ct = c * t;
        return (ct / kPi) / (ct * ct + x * x);
    }
    const double cutoff = frequency_cutoff(alpha, c, t);
    auto damping = [&](double xi) { return std::exp(-t * c * std::pow(xi, alpha)); };
    if (x == 0.0) return integrate(damping, 0.0, cutoff, 1e-14, 1e-10).value / kPi;
    return integrate_oscillatory(damping, 0.0, cutoff, std::abs(x), true).value /
           kPi;
}

double stable_density_1d_dx(double alpha, double c, double t, double x) {
    check_args(alpha, t);
    if (is_cauchy(alpha)) {
        const double ct = c * t;
        const double denom = ct * ct + x * x;
        return -(ct / kPi) * 2.0 * x / (denom * denom);
    }
    const double cutoff = frequency_cutoff(alpha, c, t);
    if (x == 0.0) return 0.0;  // even density
    auto damping = [&](double xi) {
        return xi * std::exp(-t * c * std::pow(xi, alpha));
    };
    const double magnitude =
        integrate_oscillatory(damping, 0.0, cutoff, std::abs(x), false).value / kPi;
    return x > 0.0 ? -magnitude : magnitude;
}

double stable_density_1d_dt(double alpha, double c, double t, double x) {
    check_args(alpha, t);
    if (is_cauchy(alpha)) {
        const double ct = c * t;
        const double denom = ct * ct + x * x;
        return (c / kPi) * (x * x - ct * ct) / (denom * denom);
    }
    const double cutoff = frequency_cutoff(alpha, c, t);
    auto damping = [&](double xi) {
        const double xa = std::pow(xi, alpha);
        return xa * std::exp(-t * c * xa);
    };
    if (x == 0.0) return -c * integrate(damping, 0.0, cutoff, 1e-14, 1e-10).value / kPi;
    return -c *
           integrate_oscillatory(damping, 0.0, cutoff, std::abs(x), true).value /
           kPi;
}

double stable_density_periodized_1d(double alpha, double c, double t, double L,
                                    double x) {
    check_args(alpha, t);
    if (L <= 0.0) {
        throw std::invalid_argument("periodized density: period must be positive");
    }
    double sum = 1.0;
    const double base_freq = 2.0 * kPi / L;
    for (int k = 1;; ++k) {
        const double damp = std::exp(-t * c * std::pow(base_freq * k, alpha));
        if (damp < 1e-18) break;
        sum += 2.0 * damp * std::cos(base_freq * k * x);
        if (k > 2000000) {
            throw std::runtime_error("periodized density: Fourier sum too long");
        }
    }
    return sum / L;
}

double carre_du_champ_sqrt_density_1d(double alpha, double c, double t) {
    check_args(alpha, t);
    const double f0 = std::sqrt(stable_density_1d(alpha, c, t, 0.0));
    auto diff_sq = [&](double z) {
        const double fz = std::sqrt(stable_density_1d(alpha, c, t, z));
        const double d = f0 - fz;
        return d * d * std::pow(z, -1.0 - alpha);
    };
    // The integrand vanishes like z^{3 - alpha} at the origin; split the range
    // so the adaptive rule resolves both the origin and the heavy tail.
    const double near = integrate(diff_sq, 0.0, 1.0, 1e-14, 1e-9).value;
    const double far = integrate_to_inf(diff_sq, 1.0, 1e-14, 1e-9).value;
    return 2.0 * (near + far);
}

} // namespace heatlab
