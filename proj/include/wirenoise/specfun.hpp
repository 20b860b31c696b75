#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "wirenoise/errors.hpp"

// Special functions for the roughness spectrum normalisation and the wire
// transfer-function series: Euler gamma, lower incomplete gamma of integer
// order (any real argument), and modified Bessel K of integer order.
//
// All functions are pure and reentrant.
namespace wirenoise::specfun {

namespace detail {

inline constexpr int max_series_terms = 500;
inline constexpr double series_eps = 1e-16;

inline double log_max_double() { return std::log(std::numeric_limits<double>::max()); }

// ln K_nu(x) for x beyond the double range of K itself (x > ~700),
// from the large-argument Hankel expansion (three terms).
inline double log_bessel_k_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double t1 = (mu - 1.0) / (8.0 * x);
    const double t2 = t1 * (mu - 9.0) / (2.0 * 8.0 * x);
    const double t3 = t2 * (mu - 25.0) / (3.0 * 8.0 * x);
    return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log1p(t1 + t2 + t3);
}

} // namespace detail

/// Euler gamma function for x > 0.
inline double gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
    }
    return std::tgamma(x);
}

/// Lower incomplete gamma gamma_n(x) = int_0^x t^{n-1} e^{-t} dt for integer n >= 1.
///
/// Negative x is reached by analytic continuation of the power series
/// x^n sum_k (-x)^k / (k! (n+k)); for x < 0 every term has the same sign so
/// the series is used directly. For x > 0 the equivalent positive-term form
/// e^{-x} sum_k x^{n+k} / (n (n+1) ... (n+k)) avoids the cancellation the
/// alternating series suffers at large x.
///
/// Throws OverflowError when |result| exceeds the double range (large negative x).
inline double lower_incomplete_gamma(int n, double x) {
    if (n < 1) {
        throw DomainError("lower_incomplete_gamma: order must be >= 1, got " + std::to_string(n));
    }
    if (!std::isfinite(x)) {
        if (x > 0) return std::tgamma(static_cast<double>(n));
        throw OverflowError("lower_incomplete_gamma: result overflows for x = -inf");
    }
    if (x == 0.0) return 0.0;

    if (x < 0.0) {
        const double y = -x;
        double u = 1.0;  // y^k / k!
        double sum = 1.0 / n;
        int k = 1;
        for (; k < detail::max_series_terms; ++k) {
            u *= y / k;
            const double term = u / (n + k);
            sum += term;
            if (!std::isfinite(sum)) break;
            if (term < detail::series_eps * sum) break;
        }
        if (!std::isfinite(sum)) {
            throw OverflowError("lower_incomplete_gamma: result overflows at x = " + std::to_string(x));
        }
        if (k == detail::max_series_terms) {
            throw ConvergenceError("lower_incomplete_gamma: series did not converge at x = " + std::to_string(x));
        }
        const double log_mag = n * std::log(y) + std::log(sum);
        if (log_mag > detail::log_max_double()) {
            throw OverflowError("lower_incomplete_gamma: result overflows at x = " + std::to_string(x));
        }
        const double mag = std::exp(log_mag);
        return (n % 2 == 0) ? mag : -mag;
    }

    // Positive x, below the peak of the integrand's mass.
    if (x <= n) {
        double r = 1.0;  // ratio t_k / t_0 = x^k / ((n+1)...(n+k))
        double sum = 1.0;
        int k = 1;
        for (; k < detail::max_series_terms; ++k) {
            r *= x / (n + k);
            sum += r;
            if (!std::isfinite(sum)) break;
            if (r < detail::series_eps * sum) break;
        }
        if (std::isfinite(sum) && k < detail::max_series_terms) {
            return std::exp(n * std::log(x) - x - std::log(static_cast<double>(n)) + std::log(sum));
        }
    }
    // Past the peak (x > n): gamma_n(x) = (n-1)! [1 - e^{-x} sum_{k<n} x^k/k!],
    // where the subtracted piece is small so there is no cancellation.
    double log_tail_sum = -std::numeric_limits<double>::infinity();
    double log_term = 0.0;  // ln(x^k / k!)
    for (int j = 0; j < n; ++j) {
        if (j > 0) log_term += std::log(x / j);
        const double hi = std::max(log_tail_sum, log_term);
        log_tail_sum = hi + std::log(std::exp(log_tail_sum - hi) + std::exp(log_term - hi));
    }
    return std::tgamma(static_cast<double>(n)) * (1.0 - std::exp(log_tail_sum - x));
}

/// ln K_n(x) for n = 0..n_max.
///
/// Upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n is run on the ratios
/// r_n = K_{n+1}/K_n (r_n = 1/r_{n-1} + 2n/x). K grows with n, so forward
/// recurrence is the dominant-solution direction and is stable; working with
/// ratios and logs keeps orders that overflow a double usable.
inline std::vector<double> log_bessel_k_sequence(int n_max, double x) {
    if (n_max < 0) throw DomainError("bessel_k: order must be >= 0");
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: argument must be positive, got " + std::to_string(x));
    }
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    double log_k0 = 0.0;
    double ratio = 0.0;  // K1/K0
    const double k0 = boost::math::cyl_bessel_k(0, x);
    const double k1 = boost::math::cyl_bessel_k(1, x);
    if (k0 > 0.0 && k1 > 0.0 && std::isfinite(k1)) {
        log_k0 = std::log(k0);
        ratio = k1 / k0;
    } else {
        log_k0 = detail::log_bessel_k_asymptotic(0.0, x);
        ratio = std::exp(detail::log_bessel_k_asymptotic(1.0, x) - log_k0);
    }
    out[0] = log_k0;
    for (int n = 0; n < n_max; ++n) {
        out[n + 1] = out[n] + std::log(ratio);
        ratio = 1.0 / ratio + 2.0 * (n + 1) / x;
    }
    return out;
}

/// ln K_n(x).
inline double log_bessel_k(int n, double x) { return log_bessel_k_sequence(n, x).back(); }

/// Modified Bessel function of the second kind K_n(x), integer n >= 0, x > 0.
///
/// K_0 and K_1 come from Boost.Math; higher orders use the upward recurrence
/// K_{n+1} = K_{n-1} + (2n/x) K_n, which is forward-stable because K_n
/// increases with n. Underflows to 0 for x beyond ~700.
inline double bessel_k(int n, double x) {
    if (n < 0) throw DomainError("bessel_k: order must be >= 0, got " + std::to_string(n));
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: argument must be positive, got " + std::to_string(x));
    }
    double km1 = boost::math::cyl_bessel_k(0, x);
    if (n == 0) return km1;
    double k = boost::math::cyl_bessel_k(1, x);
    for (int m = 1; m < n; ++m) {
        const double next = km1 + (2.0 * m / x) * k;
        km1 = k;
        k = next;
    }
    if (!std::isfinite(k)) {
        throw OverflowError("bessel_k: K_" + std::to_string(n) + "(" + std::to_string(x) + ") overflows");
    }
    return k;
}

} // namespace wirenoise::specfun
