#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "hslab/errors.hpp"

namespace hslab {

namespace detail {
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace detail

/// Real-to-complex spectral engine for one period of n samples. Owns FFTW
/// plans and buffers; not reentrant, create one per thread if needed.
class PeriodicSpectral {
public:
    PeriodicSpectral(std::size_t n, double period) : n_(n), period_(period) {
        if (n < 8) throw ConfigError("PeriodicSpectral: too few samples");
        real_ = fftw_alloc_real(n_);
        spec_ = fftw_alloc_complex(n_ / 2 + 1);
        work_ = fftw_alloc_complex(n_ / 2 + 1);
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_, spec_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), work_, real_, FFTW_ESTIMATE);
    }

    PeriodicSpectral(const PeriodicSpectral&) = delete;
    PeriodicSpectral& operator=(const PeriodicSpectral&) = delete;

    ~PeriodicSpectral() {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(spec_);
        fftw_free(work_);
    }

    std::size_t size() const { return n_; }
    double wavenumber(std::size_t j) const { return 2.0 * std::numbers::pi * static_cast<double>(j) / period_; }

    /// out = d^order/dx^order of in (both length n).
    void derivative(const double* in, double* out, int order) {
        forward(in);
        const std::size_t nk = n_ / 2 + 1;
        for (std::size_t j = 0; j < nk; ++j) {
            const double K = wavenumber(j);
            std::complex<double> f(spec_[j][0], spec_[j][1]);
            std::complex<double> ik(0.0, K);
            std::complex<double> g = f;
            for (int o = 0; o < order; ++o) g *= ik;
            work_[j][0] = g.real();
            work_[j][1] = g.imag();
        }
        if (n_ % 2 == 0 && order % 2 == 1) { // Nyquist mode has no odd derivative
            work_[nk - 1][0] = 0.0;
            work_[nk - 1][1] = 0.0;
        }
        backward(out);
    }

    /// Solve -u'' = m with periodic boundary, zero mean; out = u.
    void solve_poisson(const double* m, double* out) {
        forward(m);
        const std::size_t nk = n_ / 2 + 1;
        work_[0][0] = 0.0;
        work_[0][1] = 0.0;
        for (std::size_t j = 1; j < nk; ++j) {
            const double K = wavenumber(j);
            work_[j][0] = spec_[j][0] / (K * K);
            work_[j][1] = spec_[j][1] / (K * K);
        }
        backward(out);
    }

private:
    void forward(const double* in) {
        for (std::size_t i = 0; i < n_; ++i) real_[i] = in[i];
        fftw_execute(fwd_);
    }
    void backward(double* out) {
        fftw_execute(bwd_);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i] * s;
    }

    std::size_t n_;
    double period_;
    double* real_;
    fftw_complex* spec_;
    fftw_complex* work_;
    fftw_plan fwd_, bwd_;
};

} // namespace hslab
