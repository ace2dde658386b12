#ifndef HEATLAB_CIRCULANT_HPP
#define HEATLAB_CIRCULANT_HPP

#include <fftw3.h>

#include <vector>

#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"

namespace heatlab {

// Backward-Euler step engine for translation-invariant kernels. The generator
// is (block-)circulant on the periodic lattice, so (I - tau G)^{-1} is applied
// exactly by dividing Fourier coefficients by (1 - tau lambda_k), with lambda_k
// the real spectrum of the symmetric stencil.
class CirculantStepper {
public:
    CirculantStepper(const JumpKernel& k, const Lattice& lat);
    ~CirculantStepper();
    CirculantStepper(const CirculantStepper&) = delete;
    CirculantStepper& operator=(const CirculantStepper&) = delete;

    // u := (I - tau G(t))^{-1} u
    void step(std::vector<double>& u, double t, double tau);

private:
    void ensure_spectrum(double t);

    JumpKernel kernel_;
    Lattice lat_;
    int n_bins_;
    std::vector<double> spectrum_;
    double spectrum_time_ = 0.0;
    bool spectrum_valid_ = false;

    double* real_buf_ = nullptr;
    fftw_complex* cplx_buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

} // namespace heatlab

#endif
