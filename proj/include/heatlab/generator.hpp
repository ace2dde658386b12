#ifndef HEATLAB_GENERATOR_HPP
#define HEATLAB_GENERATOR_HPP

#include <Eigen/Dense>
#include <optional>

#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"

namespace heatlab {

// Dense symmetric discretization of L_t at a fixed time: off-diagonal weights
// w_ij = k(t; x_i, x_j) h^d with minimum-image displacement, diagonal the
// negated off-diagonal row sum (row sums are exactly zero by construction).
struct Generator {
    Lattice lattice;
    double time;
    std::string kernel_tag;
    Eigen::MatrixXd matrix;
};

inline constexpr int kGeneratorCellCap = 4096;

Generator assemble_generator(const JumpKernel& k, const Lattice& lat, double t);

// Discrete energy form E_t(u,v) = sum over ordered pairs i != j of
// (u_i - u_j)(v_i - v_j) k(t;x_i,x_j) h^{2d}; equals 2 <-G u, v> h^d.
double dirichlet_form(const Generator& g, const GridField& u, const GridField& v);

// Discrete Gagliardo seminorm squared over ordered distinct pairs in the region
// (whole lattice when absent): sum (u_i - u_j)^2 |x_i - x_j|^{-d-alpha} h^{2d}.
double gagliardo_seminorm(const Lattice& lat, const GridField& u, double alpha,
                          const std::optional<std::vector<int>>& region = std::nullopt);

} // namespace heatlab

#endif
