#include "heatlab/circulant.hpp"

#include <cstring>
#include <mutex>

namespace heatlab {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

CirculantStepper::CirculantStepper(const JumpKernel& k, const Lattice& lat)
    : kernel_(k), lat_(lat) {
    if (!k.translation_invariant)
        throw std::invalid_argument("circulant stepper requires a translation-invariant kernel");
    const int n = lat.cells_per_axis();
    const int N = lat.cell_count();
    n_bins_ = lat.dim() == 1 ? n / 2 + 1 : n * (n / 2 + 1);
    spectrum_.resize(static_cast<size_t>(n_bins_));

    std::lock_guard<std::mutex> lock(plan_mutex());
    real_buf_ = fftw_alloc_real(static_cast<size_t>(N));
    cplx_buf_ = fftw_alloc_complex(static_cast<size_t>(n_bins_));
    if (lat.dim() == 1) {
        fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_, cplx_buf_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(n, cplx_buf_, real_buf_, FFTW_ESTIMATE);
    } else {
        fwd_ = fftw_plan_dft_r2c_2d(n, n, real_buf_, cplx_buf_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_2d(n, n, cplx_buf_, real_buf_, FFTW_ESTIMATE);
    }
}

CirculantStepper::~CirculantStepper() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void CirculantStepper::ensure_spectrum(double t) {
    if (spectrum_valid_ && (kernel_.time_independent || spectrum_time_ == t)) return;
    const int N = lat_.cell_count();
    const double hd = lat_.cell_volume();
    double diag = 0.0;
    for (int j = 1; j < N; ++j) {
        const double w = kernel_.evaluate_diff(t, lat_.min_image(0, j)) * hd;
        real_buf_[j] = w;
        diag += w;
    }
    real_buf_[0] = -diag;
    fftw_execute(fwd_);
    // The stencil is even, so the spectrum is real; the DC mode is exactly zero
    // (zero row sums) and nonpositivity is enforced against round-off.
    for (int b = 0; b < n_bins_; ++b)
        spectrum_[static_cast<size_t>(b)] = std::min(0.0, cplx_buf_[b][0]);
    spectrum_[0] = 0.0;
    spectrum_time_ = t;
    spectrum_valid_ = true;
}

void CirculantStepper::step(std::vector<double>& u, double t, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("step size must be positive");
    const int N = lat_.cell_count();
    if (static_cast<int>(u.size()) != N) throw std::invalid_argument("field size mismatch");
    ensure_spectrum(t);
    std::memcpy(real_buf_, u.data(), sizeof(double) * static_cast<size_t>(N));
    fftw_execute(fwd_);
    for (int b = 0; b < n_bins_; ++b) {
        const double div = 1.0 - tau * spectrum_[static_cast<size_t>(b)];
        cplx_buf_[b][0] /= div;
        cplx_buf_[b][1] /= div;
    }
    fftw_execute(bwd_);
    const double scale = 1.0 / static_cast<double>(N);
    for (int i = 0; i < N; ++i) u[static_cast<size_t>(i)] = real_buf_[i] * scale;
}

} // namespace heatlab
