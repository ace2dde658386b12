#ifndef HEATLAB_QUAD_HPP
#define HEATLAB_QUAD_HPP

#include <functional>

namespace heatlab {

struct QuadResult {
    double value = 0.0;
    double abserr = 0.0;
};

// Adaptive quadrature on [a,b] (QAGS; handles integrable endpoint singularities).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double epsabs = 0.0, double epsrel = 1e-10);

// Adaptive quadrature on [a, infinity) (QAGIU).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double epsabs = 1e-14, double epsrel = 1e-10);

// Integral of f(x) * cos(omega x) (or sin with cosine = false) on [a, b]
// (QAWO); robust for large omega where plain adaptive quadrature stalls.
QuadResult integrate_oscillatory(const std::function<double(double)>& f, double a,
                                 double b, double omega, bool cosine,
                                 double epsabs = 1e-14, double epsrel = 1e-10);

} // namespace heatlab

#endif
