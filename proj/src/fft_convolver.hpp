#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace levyruin::detail {

// Repeated linear convolution against one fixed kernel, truncated to the
// kernel length. Owns its FFTW plans and buffers.
class FftConvolver {
public:
    explicit FftConvolver(std::span<const double> kernel) : n_(kernel.size()) {
        size_ = 1;
        while (size_ < 2 * n_) size_ <<= 1;
        const std::size_t nc = size_ / 2 + 1;
        real_.reset(fftw_alloc_real(size_));
        spec_.reset(fftw_alloc_complex(nc));
        kernel_.resize(nc);
        {
            // The FFTW planner is not thread safe.
            std::scoped_lock lock(planner_mutex());
            forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), real_.get(), spec_.get(),
                                            FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(size_), spec_.get(), real_.get(),
                                             FFTW_ESTIMATE);
        }
        load(kernel);
        fftw_execute(forward_);
        for (std::size_t k = 0; k < nc; ++k) {
            kernel_[k] = {spec_[k][0], spec_[k][1]};
        }
    }

    FftConvolver(const FftConvolver&) = delete;
    FftConvolver& operator=(const FftConvolver&) = delete;

    ~FftConvolver() {
        std::scoped_lock lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }

    /// x <- (x * kernel) restricted to the first n entries.
    void convolve_in_place(std::vector<double>& x) {
        load(x);
        fftw_execute(forward_);
        const std::size_t nc = size_ / 2 + 1;
        for (std::size_t k = 0; k < nc; ++k) {
            const std::complex<double> z = std::complex<double>(spec_[k][0], spec_[k][1]) * kernel_[k];
            spec_[k][0] = z.real();
            spec_[k][1] = z.imag();
        }
        fftw_execute(backward_);
        const double scale = 1.0 / static_cast<double>(size_);
        x.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) x[i] = real_[i] * scale;
    }

private:
    struct FftwFree {
        void operator()(void* p) const { fftw_free(p); }
    };

    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    void load(std::span<const double> x) {
        std::size_t i = 0;
        for (; i < x.size() && i < n_; ++i) real_[i] = x[i];
        for (; i < size_; ++i) real_[i] = 0.0;
    }

    std::size_t n_;
    std::size_t size_ = 1;
    std::unique_ptr<double[], FftwFree> real_;
    std::unique_ptr<fftw_complex[], FftwFree> spec_;
    std::vector<std::complex<double>> kernel_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace levyruin::detail
