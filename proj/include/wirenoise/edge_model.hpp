#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wirenoise/curve.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/quadrature.hpp"
#include "wirenoise/specfun.hpp"

// Statistical model of a self-affine rough edge: stretched-exponential
// autocorrelation, the normalised Lorentzian-like model spectrum, and the
// direct cosine transform used to judge where that model is faithful.
namespace wirenoise {

/// Roughness of an edge (or wire centre line): rms amplitude sigma [m],
/// correlation length xi [m], Hurst exponent alpha in (0, 1].
class EdgeRoughness {
public:
    EdgeRoughness(double sigma, double xi, double alpha) : sigma_(sigma), xi_(xi), alpha_(alpha) {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) {
            throw DomainError("EdgeRoughness: sigma must be positive");
        }
        if (!(xi > 0.0) || !std::isfinite(xi)) {
            throw DomainError("EdgeRoughness: xi must be positive");
        }
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw DomainError("EdgeRoughness: alpha must lie in (0, 1], got " + std::to_string(alpha));
        }
    }

    double sigma() const noexcept { return sigma_; }
    double xi() const noexcept { return xi_; }
    double alpha() const noexcept { return alpha_; }

    /// The model spectrum tracks the exact transform of the autocorrelation
    /// only for 1/4 < alpha < 1.
    bool in_validity_window() const noexcept { return alpha_ > 0.25 && alpha_ < 1.0; }

    bool operator==(const EdgeRoughness&) const = default;

private:
    double sigma_;
    double xi_;
    double alpha_;
};

/// C(r) = sigma^2 exp[-(r/xi)^(2 alpha)].
inline double autocorrelation(const EdgeRoughness& rough, double r) {
    if (r < 0.0) throw DomainError("autocorrelation: lag must be non-negative");
    const double s2 = rough.sigma() * rough.sigma();
    return s2 * std::exp(-std::pow(r / rough.xi(), 2.0 * rough.alpha()));
}

/// Height-height correlation G(r) = sqrt(2 sigma^2 - 2 C(r)).
inline double height_height(const EdgeRoughness& rough, double r) {
    const double s2 = rough.sigma() * rough.sigma();
    // 1 - exp(-u) via expm1 keeps G accurate for r << xi.
    const double u = std::pow(r / rough.xi(), 2.0 * rough.alpha());
    return std::sqrt(-2.0 * s2 * std::expm1(-u));
}

/// Normalisation constant a(alpha) = Gamma^2(alpha) / (pi Gamma^2(1/2 + alpha)),
/// fixed by requiring the model spectrum to integrate to sigma^2.
inline double norm_constant(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("norm_constant: alpha must lie in (0, 1]");
    }
    const double ratio = specfun::gamma(alpha) / specfun::gamma(0.5 + alpha);
    return ratio * ratio / std::numbers::pi;
}

/// Dimensionless model spectrum P~(alpha, q xi) = (2/pi) / (1 + a q^2 xi^2)^(1/2 + alpha).
inline double model_spectrum_dimensionless(double alpha, double q_xi) {
    const double a = norm_constant(alpha);
    return (2.0 / std::numbers::pi) * std::pow(1.0 + a * q_xi * q_xi, -(0.5 + alpha));
}

/// Model power spectrum P(alpha, q) = sigma^2 xi P~ [m^3], one-sided in q >= 0.
inline double model_spectrum(const EdgeRoughness& rough, double q) {
    if (q < 0.0) throw DomainError("model_spectrum: q must be non-negative");
    const double s2 = rough.sigma() * rough.sigma();
    return s2 * rough.xi() * model_spectrum_dimensionless(rough.alpha(), q * rough.xi());
}

namespace detail {

// Lag beyond which C(r) < 1e-16 sigma^2, in units of xi.
inline double transform_cutoff(double alpha) { return std::pow(36.8, 1.0 / (2.0 * alpha)); }

} // namespace detail

/// Dimensionless cosine transform (2/pi) int_0^inf exp(-r^(2 alpha)) cos(k r) dr
/// with k = q xi, by adaptive quadrature. Beyond one correlation length the
/// range is cut into half-period panels of width pi/k; the tail past the point
/// where C drops below 1e-16 sigma^2 is dropped.
inline double numeric_spectrum_dimensionless(double alpha, double q_xi, double rel_tol = 1e-8) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("numeric_spectrum: alpha must lie in (0, 1]");
    if (q_xi < 0.0) throw DomainError("numeric_spectrum: q must be non-negative");
    const double r_max = detail::transform_cutoff(alpha);
    auto f = [alpha, q_xi](double r) { return std::exp(-std::pow(r, 2.0 * alpha)) * std::cos(q_xi * r); };

    // The first panel holds the r^(2 alpha) cusp at the origin and goes to
    // tanh-sinh; the remaining smooth panels to Gauss-Kronrod.
    const double width = q_xi > 0.0 ? std::numbers::pi / q_xi : r_max;
    const double first = std::min(width, 1.0);
    std::vector<double> edges{first};
    // Sliver panels are merged into their neighbour.
    auto add = [&edges, width](double r) {
        if (r - edges.back() > 1e-3 * std::min(width, 1.0)) edges.push_back(r);
    };
    for (double r = first + width; r < 1.0; r += width) add(r);
    add(1.0);
    if (width < r_max) {
        for (double r = 1.0 + width; r < r_max; r += width) add(r);
    } else {
        for (double r = 2.0; r < r_max; r *= 2.0) add(r);
    }
    if (r_max - edges.back() > 1e-3 * std::min(width, 1.0)) {
        edges.push_back(r_max);
    } else {
        edges.back() = r_max;
    }

    quad::Options opt;
    opt.rel_tol = rel_tol;
    // At large q the result sits orders below the integral of |C| and the
    // panel sum cancels; tolerate an absolute error a hundredth of rel_tol
    // on that scale.
    opt.abs_tol = 1e-2 * rel_tol * std::tgamma(1.0 + 1.0 / (2.0 * alpha));
    const auto head = quad::integrate_endpoint(f, 0.0, first, opt);
    const auto res = quad::integrate_panels(f, edges, opt, head);
    return (2.0 / std::numbers::pi) * res.value;
}

/// Direct numerical transform of the autocorrelation [m^3].
inline double numeric_spectrum(const EdgeRoughness& rough, double q, double rel_tol = 1e-8) {
    const double s2 = rough.sigma() * rough.sigma();
    return s2 * rough.xi() * numeric_spectrum_dimensionless(rough.alpha(), q * rough.xi(), rel_tol);
}

/// Result of comparing the model spectrum against the direct transform.
struct SpectrumValidity {
    double alpha = 0.0;
    double max_rel_deviation = 0.0;  // max |numeric/model - 1| over the grid
    double at_q_xi = 0.0;            // where that maximum occurs
    double gate = 0.2;
    bool passed = false;
    SampledCurve deviation;          // |numeric/model - 1| versus q xi
};

/// Tabulate the model/numeric deviation over q xi in [0, q_xi_max]. The gate
/// (default 20%) is configurable; `passed` records whether the maximum stays
/// below it.
inline SpectrumValidity assess_validity(double alpha, double q_xi_max = 30.0, std::size_t points = 121,
                                        double gate = 0.2) {
    SpectrumValidity out;
    out.alpha = alpha;
    out.gate = gate;
    std::vector<double> grid{0.0};
    const auto tail = log_grid(1e-2, q_xi_max, points - 1);
    grid.insert(grid.end(), tail.begin(), tail.end());
    std::vector<double> dev(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double model = model_spectrum_dimensionless(alpha, grid[i]);
        const double numeric = numeric_spectrum_dimensionless(alpha, grid[i]);
        dev[i] = std::abs(numeric / model - 1.0);
        if (dev[i] > out.max_rel_deviation) {
            out.max_rel_deviation = dev[i];
            out.at_q_xi = grid[i];
        }
    }
    out.passed = out.max_rel_deviation < gate;
    out.deviation = SampledCurve("spectrum_deviation_alpha_" + format_double(alpha), {"q_xi", "1"},
                                 {"rel_deviation", "1"}, std::move(grid), std::move(dev));
    return out;
}

} // namespace wirenoise
