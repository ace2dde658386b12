#ifndef HEATLAB_LATTICE_HPP
#define HEATLAB_LATTICE_HPP

#include <vector>

#include "heatlab/common.hpp"

namespace heatlab {

// Periodic uniform grid standing in for R^d. Cell centers sit at integer
// multiples of the spacing; indices wrap around and distances use the
// minimum-image (torus) metric. L/h must be an even integer.
class Lattice {
public:
    Lattice(int dim, double spacing, double period);

    int dim() const { return dim_; }
    double spacing() const { return spacing_; }
    double period() const { return period_; }
    int cells_per_axis() const { return n_; }
    int cell_count() const { return count_; }
    double cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }
    // Largest minimum-image distance between two cells.
    double diameter() const;

    Point coord(int idx) const;
    int axis_index(int idx, int axis) const;
    int flat_index(int i0, int i1 = 0) const;

    // Signed integer offset of cell j relative to cell i along one axis,
    // wrapped into (-n/2, n/2]; the tie at exactly n/2 takes the positive image.
    int min_image_axis_offset(int from, int to) const;
    // Minimum-image displacement vector from cell i to cell j.
    Point min_image(int i, int j) const;
    double distance(int i, int j) const;
    // Minimum-image wrap of an arbitrary displacement vector.
    Point wrap(const Point& diff) const;

    // Cells within minimum-image distance <= r of the given center cell.
    std::vector<int> ball(int center, double r) const;

    bool operator==(const Lattice& o) const {
        return dim_ == o.dim_ && spacing_ == o.spacing_ && period_ == o.period_;
    }

private:
    int dim_;
    double spacing_;
    double period_;
    int n_;
    int count_;
};

// Scalar function on lattice cells at one time.
struct GridField {
    Lattice lattice;
    std::vector<double> values;
    double time = 0.0;

    GridField(const Lattice& lat, double t = 0.0)
        : lattice(lat), values(static_cast<size_t>(lat.cell_count()), 0.0), time(t) {}
    GridField(const Lattice& lat, std::vector<double> v, double t)
        : lattice(lat), values(std::move(v)), time(t) {}

    double mass() const;       // sum of values * h^d
    double max_value() const;
    double min_value() const;
};

} // namespace heatlab

#endif
