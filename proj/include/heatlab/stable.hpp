#ifndef HEATLAB_STABLE_HPP
#define HEATLAB_STABLE_HPP

// Continuum reference objects for the constant-coefficient fractional kernel
// k(x,y) = Lambda |x-y|^{-d-alpha}: Fourier symbol, free-space and periodized
// transition densities, and the carre du champ of their square roots. Used as
// independent oracles against the lattice semigroup.

namespace heatlab {

// c(d, alpha, Lambda) such that the symbol of the generator is -c |xi|^alpha,
// i.e. c = Lambda * int (1 - cos(e.z)) |z|^{-d-alpha} dz. Only d = 1 is
// implemented (closed form via Gamma-function identity, cross-checked by
// quadrature at construction in tests).
double symbol_constant(int dim, double alpha, double Lambda);

// Free-space transition density on R (d = 1) with symbol exp(-t c |xi|^alpha):
//   w(t, x) = (1/pi) int_0^inf exp(-t c xi^alpha) cos(x xi) dxi.
// For alpha = 1 this is the Cauchy density (c t / pi) / ((c t)^2 + x^2).
double stable_density_1d(double alpha, double c, double t, double x);

// Spatial derivative d/dx of stable_density_1d.
double stable_density_1d_dx(double alpha, double c, double t, double x);

// Time derivative d/dt of stable_density_1d.
double stable_density_1d_dt(double alpha, double c, double t, double x);

// Exact transition density of the periodized process on the circle of
// circumference L: Fourier sum over lattice frequencies 2 pi k / L.
double stable_density_periodized_1d(double alpha, double c, double t, double L,
                                    double x);

// Carre du champ of sqrt(w) taken with the *probabilistic* normalization
//   Gamma(f, f)(x) = int (f(x) - f(x+z))^2 |z|^{-1-alpha} dz   (d = 1),
// evaluated at x = 0 for w = stable_density_1d(alpha, c, t, .). Finite for
// every 0 < alpha < 2 because sqrt(w) is smooth and bounded.
double carre_du_champ_sqrt_density_1d(double alpha, double c, double t);

} // namespace heatlab

#endif
