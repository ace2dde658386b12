#ifndef HEATLAB_COMMON_HPP
#define HEATLAB_COMMON_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heatlab {

// Points and displacements in R^d, d <= 2. The unused coordinate is kept at 0.
using Point = std::array<double, 2>;

inline double norm(const Point& p) { return std::hypot(p[0], p[1]); }

inline Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }

// Lebesgue volume of the unit ball, mu(B_r) = unit_ball_volume(d) * r^d.
inline double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return M_PI;
        default: throw std::invalid_argument("dim must be 1 or 2");
    }
}

} // namespace heatlab

#endif
