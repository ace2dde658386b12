#include "heatlab/generator.hpp"

#include <iostream>

namespace heatlab {

Generator assemble_generator(const JumpKernel& k, const Lattice& lat, double t) {
    if (k.params.dim != lat.dim())
        throw std::invalid_argument("kernel and lattice dimension mismatch");
    const int N = lat.cell_count();
    if (N > kGeneratorCellCap)
        throw std::runtime_error("lattice exceeds dense generator cell cap");
    if (k.trunc_radius > 0.0 && k.trunc_radius >= lat.period() / 2.0)
        std::cerr << "warning: truncation radius >= L/2, indistinguishable from "
                     "no truncation on the torus\n";

    Generator g{lat, t, k.tag, Eigen::MatrixXd::Zero(N, N)};
    const double hd = lat.cell_volume();
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const double w = k.evaluate_diff(t, lat.min_image(i, j)) * hd;
            g.matrix(i, j) = w;
            g.matrix(j, i) = w;
        }
    }
    for (int i = 0; i < N; ++i) {
        double row = 0.0;
        for (int j = 0; j < N; ++j)
            if (j != i) row += g.matrix(i, j);
        g.matrix(i, i) = -row;
    }
    return g;
}

double dirichlet_form(const Generator& g, const GridField& u, const GridField& v) {
    if (!(u.lattice == g.lattice) || !(v.lattice == g.lattice))
        throw std::invalid_argument("field lattice does not match generator lattice");
    const int N = g.lattice.cell_count();
    const double hd = g.lattice.cell_volume();
    double e = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            e += 2.0 * (u.values[i] - u.values[j]) * (v.values[i] - v.values[j]) *
                 g.matrix(i, j) * hd;
    return e;
}

double gagliardo_seminorm(const Lattice& lat, const GridField& u, double alpha,
                          const std::optional<std::vector<int>>& region) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha out of (0,2)");
    std::vector<int> cells;
    if (region) {
        cells = *region;
    } else {
        cells.resize(static_cast<size_t>(lat.cell_count()));
        for (int i = 0; i < lat.cell_count(); ++i) cells[static_cast<size_t>(i)] = i;
    }
    if (cells.size() < 2) throw std::domain_error("region smaller than 2 cells");
    const double h2d = lat.cell_volume() * lat.cell_volume();
    const double expo = lat.dim() + alpha;
    double s = 0.0;
    for (size_t a = 0; a < cells.size(); ++a) {
        for (size_t b = a + 1; b < cells.size(); ++b) {
            const double du = u.values[static_cast<size_t>(cells[a])] -
                              u.values[static_cast<size_t>(cells[b])];
            s += 2.0 * du * du * std::pow(lat.distance(cells[a], cells[b]), -expo) * h2d;
        }
    }
    return s;
}

} // namespace heatlab
