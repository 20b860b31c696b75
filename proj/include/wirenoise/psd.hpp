#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "wirenoise/errors.hpp"
#include "wirenoise/fft.hpp"

// One-sided power spectral density in angular wavenumber q, normalised so
// that int_0^inf P(q) dq equals the variance. This is the convention of the
// roughness spectrum sigma^2 xi P~(q xi). For N samples at spacing dz with
// window w and U = mean(w^2),
//   P(q_j) = dz |sum_k w_k x_k exp(-i q_j k dz)|^2 / (pi N U),  q_j = 2 pi j / (N dz).
// The factor 1/pi is the conversion from the usual two-sided density in
// cycles per length (dz |X|^2 / N) to this one.
namespace wirenoise {

struct Psd {
    std::vector<double> q;
    std::vector<double> p;
};

enum class Window { rectangular, hann };

namespace detail {

inline std::vector<double> window_weights(std::size_t n, Window w) {
    std::vector<double> out(n, 1.0);
    if (w == Window::hann) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        }
    }
    return out;
}

} // namespace detail

/// Windowed periodogram of a single record, mean removed.
inline Psd periodogram(const double* x, std::size_t n, double dz, Window window = Window::hann) {
    if (n < 2) throw DomainError("periodogram: need at least two samples");
    if (!(dz > 0.0)) throw DomainError("periodogram: dz must be positive");
    const auto w = detail::window_weights(n, window);
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean += x[k];
    mean /= static_cast<double>(n);
    double u = 0.0;
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = w[k] * (x[k] - mean);
        u += w[k] * w[k];
    }
    u /= static_cast<double>(n);
    const auto spec = fft::rfft(y);
    Psd out;
    out.q.resize(spec.size());
    out.p.resize(spec.size());
    const double dq = 2.0 * std::numbers::pi / (static_cast<double>(n) * dz);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        out.q[j] = dq * static_cast<double>(j);
        out.p[j] = dz * std::norm(spec[j]) / (std::numbers::pi * static_cast<double>(n) * u);
    }
    return out;
}

/// Welch estimate: mean of windowed periodograms over segments of length
/// `segment` with 50% overlap.
inline Psd welch(const std::vector<double>& x, double dz, std::size_t segment, Window window = Window::hann) {
    if (segment < 2 || segment > x.size()) throw DomainError("welch: segment must lie in [2, record length]");
    const std::size_t step = segment / 2;
    Psd acc;
    std::size_t count = 0;
    for (std::size_t start = 0; start + segment <= x.size(); start += step) {
        const auto p = periodogram(x.data() + start, segment, dz, window);
        if (acc.q.empty()) {
            acc = p;
        } else {
            for (std::size_t j = 0; j < p.p.size(); ++j) acc.p[j] += p.p[j];
        }
        ++count;
    }
    for (double& v : acc.p) v /= static_cast<double>(count);
    return acc;
}

/// Running mean of spectra on a common grid (ensemble averaging).
class PsdAccumulator {
public:
    void add(const Psd& p) {
        if (count_ == 0) {
            mean_ = p;
        } else {
            if (p.p.size() != mean_.p.size()) throw ShapeError("PsdAccumulator: spectra differ in length");
            for (std::size_t j = 0; j < p.p.size(); ++j) mean_.p[j] += p.p[j];
        }
        ++count_;
    }

    Psd mean() const {
        Psd out = mean_;
        for (double& v : out.p) v /= static_cast<double>(count_);
        return out;
    }

    std::size_t count() const noexcept { return count_; }

private:
    Psd mean_;
    std::size_t count_ = 0;
};

} // namespace wirenoise
