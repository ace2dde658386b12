#include "heatlab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace heatlab {

Lattice::Lattice(int dim, double spacing, double period)
    : dim_(dim), spacing_(spacing), period_(period) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("lattice dim must be 1 or 2");
    if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    if (!(period > 0.0)) throw std::invalid_argument("lattice period must be positive");
    const double ratio = period / spacing;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * ratio)
        throw std::invalid_argument("period/spacing must be an integer");
    n_ = static_cast<int>(rounded);
    if (n_ < 2 || n_ % 2 != 0)
        throw std::invalid_argument("period/spacing must be an even integer >= 2");
    count_ = dim_ == 1 ? n_ : n_ * n_;
}

double Lattice::diameter() const {
    const double half = (n_ / 2) * spacing_;
    return dim_ == 1 ? half : std::hypot(half, half);
}

Point Lattice::coord(int idx) const {
    if (dim_ == 1) return {idx * spacing_, 0.0};
    return {(idx % n_) * spacing_, (idx / n_) * spacing_};
}

int Lattice::axis_index(int idx, int axis) const {
    if (dim_ == 1) return axis == 0 ? idx : 0;
    return axis == 0 ? idx % n_ : idx / n_;
}

int Lattice::flat_index(int i0, int i1) const {
    auto wrap_idx = [this](int i) {
        int r = i % n_;
        return r < 0 ? r + n_ : r;
    };
    if (dim_ == 1) return wrap_idx(i0);
    return wrap_idx(i1) * n_ + wrap_idx(i0);
}

int Lattice::min_image_axis_offset(int from, int to) const {
    int off = to - from;
    off %= n_;
    if (off < 0) off += n_;            // now in [0, n)
    if (off > n_ / 2) off -= n_;       // wrap to (-n/2, n/2]; tie keeps +n/2
    return off;
}

Point Lattice::min_image(int i, int j) const {
    if (dim_ == 1)
        return {min_image_axis_offset(i, j) * spacing_, 0.0};
    const int dx = min_image_axis_offset(i % n_, j % n_);
    const int dy = min_image_axis_offset(i / n_, j / n_);
    return {dx * spacing_, dy * spacing_};
}

double Lattice::distance(int i, int j) const { return norm(min_image(i, j)); }

Point Lattice::wrap(const Point& diff) const {
    Point w = diff;
    for (int a = 0; a < dim_; ++a) {
        w[a] -= period_ * std::floor(w[a] / period_ + 0.5);
        if (w[a] <= -period_ / 2) w[a] += period_;  // tie at L/2 goes positive
    }
    return w;
}

std::vector<int> Lattice::ball(int center, double r) const {
    std::vector<int> cells;
    for (int i = 0; i < count_; ++i)
        if (distance(center, i) <= r) cells.push_back(i);
    return cells;
}

double GridField::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * lattice.cell_volume();
}

double GridField::max_value() const { return *std::max_element(values.begin(), values.end()); }
double GridField::min_value() const { return *std::min_element(values.begin(), values.end()); }

} // namespace heatlab
