#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "wirenoise/constants.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/quadrature.hpp"
#include "wirenoise/specfun.hpp"

// Transfer function f~(q; d, y0) mapping wire-centre displacement noise to
// axial field noise B_z at height d above a thin wire of width y0.
//
//   f~ = (qd)^2 / (q y0 cosh(q y0/2)) * sum_n (-1)^n K_{n+1}(qd) / (n! (2qd)^n)
//        * [gamma_{2n+1}(q y0/2) - gamma_{2n+1}(-q y0/2)]
//
// The series converges for d > y0/2. Its terms alternate in sign and decay
// roughly geometrically with ratio (y0/2d)^2, so the partial sums are
// accelerated with Wynn's epsilon algorithm.
namespace wirenoise {

/// Wire and trap geometry, SI units: width y0, thickness x0, trap height d, current I.
class WireGeometry {
public:
    WireGeometry(double y0, double x0, double d, double current)
        : y0_(y0), x0_(x0), d_(d), current_(current) {
        if (!(y0 > 0.0) || !(x0 > 0.0) || !(d > 0.0)) {
            throw DomainError("WireGeometry: lengths must be positive");
        }
        if (!(current > 0.0)) throw DomainError("WireGeometry: current must be positive");
    }

    double y0() const noexcept { return y0_; }
    double x0() const noexcept { return x0_; }
    double d() const noexcept { return d_; }
    double current() const noexcept { return current_; }

    /// The transfer function assumes a wire that is thin compared with d.
    bool thin_wire() const noexcept { return x0_ < d_ / 5.0; }
    /// The transfer series converges only for d > y0/2.
    bool series_valid() const noexcept { return d_ > 0.5 * y0_; }

    double d_over_y0() const noexcept { return d_ / y0_; }

    /// B0 = mu0 I / (2 pi d), the ideal wire field at the trap [T].
    double b0() const noexcept { return constants::mu0.value * current_ / (2.0 * constants::pi * d_); }

private:
    double y0_;
    double x0_;
    double d_;
    double current_;
};

enum class FtildeMethod { series, accelerated, quadrature };

struct FtildeResult {
    double value = 0.0;
    int terms = 0;  // series terms consumed (0 if the series was not attempted)
    FtildeMethod method = FtildeMethod::series;
};

struct FtildeOptions {
    double tol = 1e-10;
    int max_terms = 200;
    bool accelerate = true;
    // When the alternating series cannot reach tol in double precision
    // (d close to y0/2 at large qd), evaluate the equivalent strip integral.
    bool quadrature_fallback = true;
};

namespace detail {

// ln(cosh x) without overflow.
inline double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// ln{[gamma_{2n+1}(x) - gamma_{2n+1}(-x)] / cosh x} for x > 0.
//
// For odd order 2n+1 the bracket equals 2 int_0^x u^{2n} cosh(u) du
// = 2 sum_k x^{2n+2k+1} / ((2k)! (2n+2k+1)), a positive-term series. The
// division by cosh x cancels the e^x growth; evaluating in logs keeps both
// large x (wide wires, high q) and large n in range.
inline double log_gamma_bracket_over_cosh(int n, double x) {
    const double m = 2.0 * n + 1.0;
    const double log_t0 = m * std::log(x) - std::log(m);
    const double x2 = x * x;
    double r = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    constexpr double rescale_at = 1e250;
    for (int k = 0; k < 100000; ++k) {
        r *= x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0)) * (m + 2.0 * k) / (m + 2.0 * k + 2.0);
        sum += r;
        if (sum > rescale_at) {
            sum /= rescale_at;
            r /= rescale_at;
            log_scale += std::log(rescale_at);
        }
        if (r < 1e-17 * sum && 2.0 * k > x) break;
    }
    return std::numbers::ln2 + log_t0 + std::log(sum) + log_scale - log_cosh(x);
}

// Wynn epsilon accumulator (counter-diagonal storage).
class WynnEpsilon {
public:
    double push(double partial_sum) {
        const std::size_t n = e_.size();
        e_.push_back(partial_sum);
        double aux2 = 0.0;
        for (std::size_t j = n; j >= 1; --j) {
            const double aux1 = aux2;
            aux2 = e_[j - 1];
            const double diff = e_[j] - aux2;
            e_[j - 1] = (std::abs(diff) < tiny_) ? huge_ : aux1 + 1.0 / diff;
        }
        return (n % 2 == 0) ? e_[0] : e_[1];
    }

private:
    static constexpr double tiny_ = 1e-300;
    static constexpr double huge_ = 1e300;
    std::vector<double> e_;
};


inline void check_ftilde_args(double qd, double d_over_y0) {
    if (!(qd > 0.0)) throw DomainError("ftilde: qd must be positive");
    if (!(d_over_y0 > 0.5)) {
        std::ostringstream msg;
        msg << "ftilde: the transfer series requires d > y0/2 (got d/y0 = " << d_over_y0 << ")";
        throw DomainError(msg.str());
    }
}

} // namespace detail

/// f~ from the strip current distribution, units d = 1:
///   f~ = (qd)^2 (d/y0) 2 int_0^{y0/2} cosh(q u)/cosh(q y0/2) K1(q rho)/rho du,  rho = sqrt(1 + u^2).
/// Integrated in the distance t from the strip edge, where the weight
/// decays as exp(-q t).
inline double ftilde_quadrature(double qd, double d_over_y0, double tol = 1e-10) {
    detail::check_ftilde_args(qd, d_over_y0);
    const double w = 0.5 / d_over_y0;
    const double q = qd;
    auto g = [q, w](double t) {
        const double u = w - t;
        const double rho = std::sqrt(1.0 + u * u);
        const double c = std::exp(-q * t) * (1.0 + std::exp(-2.0 * q * u)) / (1.0 + std::exp(-2.0 * q * w));
        const double k1 = q * rho < 700.0 ? boost::math::cyl_bessel_k(1, q * rho) : 0.0;
        return c * k1 / rho;
    };
    std::vector<double> edges{0.0};
    for (double t = 1.0 / q; t < w; t *= 2.0) edges.push_back(t);
    edges.push_back(w);
    quad::Options o;
    o.rel_tol = tol;
    o.abs_tol = std::numeric_limits<double>::min();
    const auto res = quad::integrate_panels(g, edges, o);
    return qd * qd * d_over_y0 * 2.0 * res.value;
}

/// f~ as a function of qd and the ratio d/y0.
inline FtildeResult ftilde_series(double qd, double d_over_y0, const FtildeOptions& opt = {}) {
    detail::check_ftilde_args(qd, d_over_y0);
    auto fallback = [&](int terms) {
        return FtildeResult{ftilde_quadrature(qd, d_over_y0, opt.tol), terms, FtildeMethod::quadrature};
    };
    // f~ < (qd)^2 K1(qd) underflows a double beyond this
    if (qd > 750.0) return {0.0, 0, FtildeMethod::series};
    const double half_qy0 = qd / (2.0 * d_over_y0);
    const double prefactor = qd * d_over_y0;  // (qd)^2 / (q y0); cosh folded into the bracket
    const double log_2qd = std::log(2.0 * qd);

    // ln K_{n+1}(qd) by the upward ratio recurrence, advanced inside the loop.
    // Boost raises on overflow of K2 below qd ~ 1e-154.
    const bool direct = qd > 1e-150 && qd < 700.0;
    double log_k = direct ? std::log(boost::math::cyl_bessel_k(1, qd)) : 0.0;
    double ratio = direct ? boost::math::cyl_bessel_k(2, qd) / boost::math::cyl_bessel_k(1, qd) : 0.0;  // K2/K1
    if (!direct || !std::isfinite(log_k) || !std::isfinite(ratio)) {
        const auto seq = specfun::log_bessel_k_sequence(2, qd);
        log_k = seq[1];
        ratio = std::exp(seq[2] - seq[1]);
    }

    detail::WynnEpsilon wynn;
    double max_term = 0.0;
    // Relative rounding error of the partial sum, from the largest term.
    auto precision_lost = [&](double value) {
        return 8.0 * std::numeric_limits<double>::epsilon() * max_term > opt.tol * std::abs(value);
    };
    double sum = 0.0, log_scale = 0.0;
    double est = 0.0, est_prev = 0.0, est_prev2 = 0.0;
    for (int n = 0; n < opt.max_terms; ++n) {
        const double log_term = log_k - std::lgamma(n + 1.0) - n * log_2qd +
                                detail::log_gamma_bracket_over_cosh(n, half_qy0);
        // Terms are kept relative to the first so that large qd does not underflow.
        if (n == 0) log_scale = log_term;
        const double term = (n % 2 == 0 ? 1.0 : -1.0) * std::exp(log_term - log_scale);
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        if (!std::isfinite(sum)) break;

        // advance K_{n+1} -> K_{n+2}: K_{m+1}/K_m = K_{m-1}/K_m + 2m/x with m = n+1
        log_k += std::log(ratio);
        ratio = 1.0 / ratio + 2.0 * (n + 2) / qd;

        if (std::abs(term) <= opt.tol * std::abs(sum)) {
            if (opt.quadrature_fallback && precision_lost(sum)) return fallback(n + 1);
            return {prefactor * std::exp(log_scale) * sum, n + 1, FtildeMethod::series};
        }
        if (opt.accelerate) {
            est_prev2 = est_prev;
            est_prev = est;
            est = wynn.push(sum);
            if (n >= 3 && std::isfinite(est)) {
                const double scale = std::abs(est);
                if (std::abs(est - est_prev) <= opt.tol * scale &&
                    std::abs(est_prev - est_prev2) <= opt.tol * scale) {
                    if (opt.quadrature_fallback && precision_lost(est)) return fallback(n + 1);
                    return {prefactor * std::exp(log_scale) * est, n + 1, FtildeMethod::accelerated};
                }
            }
        }
    }
    if (opt.quadrature_fallback) return fallback(opt.max_terms);
    std::ostringstream msg;
    msg << "ftilde: series did not converge in " << opt.max_terms << " terms (qd = " << qd
        << ", d/y0 = " << d_over_y0 << ")";
    throw ConvergenceError(msg.str());
}

/// f~(q; d, y0), dimensionless.
inline double ftilde(double q, const WireGeometry& geom, const FtildeOptions& opt = {}) {
    return ftilde_series(q * geom.d(), geom.d_over_y0(), opt).value;
}

/// Low-frequency asymptote of f~: qd (2d/y0) arctan(y0/2d).
inline double ftilde_lowq(double qd, double d_over_y0) {
    if (qd < 0.0) throw DomainError("ftilde_lowq: qd must be non-negative");
    const double w = 1.0 / (2.0 * d_over_y0);  // y0/2d
    return qd * std::atan(w) / w;
}

inline double ftilde_lowq(double q, const WireGeometry& geom) { return ftilde_lowq(q * geom.d(), geom.d_over_y0()); }

/// High-frequency asymptote of f~^2: (pi/2) qd (2d/y0)^2 exp{-qd [2 + (y0/2d)^2]}.
/// This is the leading order in y0/d; for d ~ y0 the edge-dominated tail
/// differs by an O(1) prefactor.
inline double ftilde2_highq(double qd, double d_over_y0) {
    const double two_d_over_y0 = 2.0 * d_over_y0;
    const double w = 1.0 / two_d_over_y0;
    return 0.5 * std::numbers::pi * qd * two_d_over_y0 * two_d_over_y0 * std::exp(-qd * (2.0 + w * w));
}

inline double ftilde2_highq(double q, const WireGeometry& geom) {
    return ftilde2_highq(q * geom.d(), geom.d_over_y0());
}

/// Narrow-wire limit y0 -> 0: f~ = (qd)^2 K1(qd).
inline double ftilde_narrow(double qd) { return qd * qd * specfun::bessel_k(1, qd); }

} // namespace wirenoise
