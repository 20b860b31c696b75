#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "wirenoise/errors.hpp"

// Thin FFTW wrappers. Planning is not thread-safe in FFTW, so plan creation
// and destruction are serialised; execution is not.
namespace wirenoise::fft {

namespace detail {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (!plan_) throw DomainError("fft: FFTW failed to create a plan");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

} // namespace detail

using cvec = std::vector<std::complex<double>>;

/// In-place complex DFT, X_k = sum_j x_j exp(-2 pi i j k / n) (forward).
inline void dft(cvec& data, bool forward = true) {
    if (data.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan raw;
    {
        std::lock_guard lock(detail::planner_mutex());
        raw = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                               FFTW_ESTIMATE);
    }
    detail::Plan(raw).execute();
}

/// Real-to-complex forward transform; returns the n/2+1 non-negative frequencies.
inline cvec rfft(const std::vector<double>& x) {
    std::vector<double> in(x);
    cvec out(x.size() / 2 + 1);
    fftw_plan raw;
    {
        std::lock_guard lock(detail::planner_mutex());
        raw = fftw_plan_dft_r2c_1d(static_cast<int>(in.size()), in.data(),
                                   reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    detail::Plan(raw).execute();
    return out;
}

/// Complex-to-real backward transform of length n (unnormalised).
inline std::vector<double> irfft(const cvec& spectrum, std::size_t n) {
    if (spectrum.size() != n / 2 + 1) throw ShapeError("irfft: spectrum length must be n/2+1");
    cvec in(spectrum);  // c2r destroys its input
    std::vector<double> out(n);
    fftw_plan raw;
    {
        std::lock_guard lock(detail::planner_mutex());
        raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                   FFTW_ESTIMATE);
    }
    detail::Plan(raw).execute();
    return out;
}

} // namespace wirenoise::fft
