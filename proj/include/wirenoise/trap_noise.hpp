#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <vector>

#include "wirenoise/edge_model.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/quadrature.hpp"
#include "wirenoise/transfer.hpp"

// Trap-potential roughness above a rough wire: the noise spectrum
//   S(q) = mu_z^2 B0^2 (sigma^2 xi / d^2) P~(alpha, q xi) f~^2(qd),
// its dimensionless form S~ = P~ f~^2, and the variance
//   V = int_0^inf S dq = mu_z^2 B0^2 (sigma/d)^2 V~,   V~ = xi int_0^inf S~ dq.
namespace wirenoise {

/// Roughness, geometry and the atom's magnetic moment along z [J/T].
class TrapContext {
public:
    TrapContext(EdgeRoughness rough, WireGeometry geom, double mu_z)
        : rough_(rough), geom_(geom), mu_z_(mu_z) {
        if (!(mu_z > 0.0)) throw DomainError("TrapContext: mu_z must be positive");
    }

    const EdgeRoughness& rough() const noexcept { return rough_; }
    const WireGeometry& geom() const noexcept { return geom_; }
    double mu_z() const noexcept { return mu_z_; }

    double d_over_y0() const noexcept { return geom_.d_over_y0(); }
    double d_over_xi() const noexcept { return geom_.d() / rough_.xi(); }

private:
    EdgeRoughness rough_;
    WireGeometry geom_;
    double mu_z_;
};

/// S~ at s = qd for the reduced parameters (d/y0, d/xi, alpha).
inline double stilde_reduced(double s, double d_over_y0, double d_over_xi, double alpha) {
    const double f = ftilde_series(s, d_over_y0).value;
    return model_spectrum_dimensionless(alpha, s / d_over_xi) * f * f;
}

/// S~(q) = P~(alpha, q xi) f~^2(qd).
inline double stilde(double q, const TrapContext& ctx) {
    return stilde_reduced(q * ctx.geom().d(), ctx.d_over_y0(), ctx.d_over_xi(), ctx.rough().alpha());
}

/// Field-noise power spectrum B0^2 (sigma^2 xi / d^2) S~ [T^2 m].
inline double field_noise_spectrum(double q, const TrapContext& ctx) {
    const double b0 = ctx.geom().b0();
    const double d = ctx.geom().d();
    const double s = ctx.rough().sigma();
    return b0 * b0 * s * s * ctx.rough().xi() / (d * d) * stilde(q, ctx);
}

/// Potential-noise power spectrum S(q) = mu_z^2 x field spectrum [J^2 m].
inline double noise_spectrum(double q, const TrapContext& ctx) {
    return ctx.mu_z() * ctx.mu_z() * field_noise_spectrum(q, ctx);
}

struct VtildeOptions {
    double s_min = 1e-6;      // lower end of the panelled range in qd
    double s_max = 40.0;      // upper end; beyond it the high-q asymptote is used
    double rel_tol = 1e-8;    // quadrature target, well inside the 1e-6 accuracy goal
    int panels_per_decade = 6;
};

struct VtildeResult {
    double value = 0.0;
    double error = 0.0;      // quadrature error estimate
    double low_tail = 0.0;   // analytic [0, s_min] piece
    double high_tail = 0.0;  // asymptotic [s_max, inf) piece
};

namespace detail {

// int_0^inf w(s) f~^2(s) ds with weight w = P~ or any non-negative factor
// that is flat near s = 0.
template <class Weight>
VtildeResult integrate_ftilde2(double d_over_y0, Weight&& w, const VtildeOptions& opt) {
    if (!(d_over_y0 > 0.5)) throw DomainError("the transfer series requires d > y0/2");
    if (!(opt.s_min > 0.0 && opt.s_max > opt.s_min)) throw DomainError("integration range must satisfy 0 < s_min < s_max");

    auto integrand = [&](double s) {
        const double f = ftilde_series(s, d_over_y0).value;
        return w(s) * f * f;
    };
    std::vector<double> edges;
    const double decades = std::log10(opt.s_max / opt.s_min);
    const auto count = static_cast<std::size_t>(std::ceil(decades * opt.panels_per_decade));
    for (std::size_t i = 0; i <= count; ++i) {
        edges.push_back(opt.s_min * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(count)));
    }
    edges.back() = opt.s_max;

    quad::Options qo;
    qo.rel_tol = opt.rel_tol;
    const auto res = quad::integrate_panels(integrand, edges, qo);

    VtildeResult out;
    // f~ ~ L s below s_min with L = (2d/y0) arctan(y0/2d): int_0^{s_min} w L^2 s^2 ds.
    const double lowq = ftilde_lowq(1.0, d_over_y0);
    out.low_tail = w(0.0) * lowq * lowq * std::pow(opt.s_min, 3) / 3.0;
    // High-q asymptote for f~^2; w is slowly varying against the exponential.
    auto tail = [&](double s) { return w(s) * ftilde2_highq(s, d_over_y0); };
    out.high_tail = quad::integrate(tail, opt.s_max, std::numeric_limits<double>::infinity(), qo).value;
    out.value = res.value + out.low_tail + out.high_tail;
    out.error = res.error;
    return out;
}

} // namespace detail

/// V~ = xi int_0^inf S~ dq = (xi/d) int_0^inf P~(alpha, s xi/d) f~^2(s) ds.
inline VtildeResult vtilde_full(double d_over_y0, double d_over_xi, double alpha, const VtildeOptions& opt = {}) {
    if (!(d_over_xi > 0.0)) throw DomainError("vtilde: d/xi must be positive");
    auto w = [alpha, d_over_xi](double s) { return model_spectrum_dimensionless(alpha, s / d_over_xi); };
    auto r = detail::integrate_ftilde2(d_over_y0, w, opt);
    const double scale = 1.0 / d_over_xi;
    r.value *= scale;
    r.error *= scale;
    r.low_tail *= scale;
    r.high_tail *= scale;
    return r;
}

inline double vtilde(double d_over_y0, double d_over_xi, double alpha, const VtildeOptions& opt = {}) {
    return vtilde_full(d_over_y0, d_over_xi, alpha, opt).value;
}

inline double vtilde(const TrapContext& ctx, const VtildeOptions& opt = {}) {
    return vtilde(ctx.d_over_y0(), ctx.d_over_xi(), ctx.rough().alpha(), opt);
}

/// Field variance (sigma/d)^2 B0^2 V~ [T^2].
inline double field_variance(const TrapContext& ctx, const VtildeOptions& opt = {}) {
    const double b0 = ctx.geom().b0();
    const double r = ctx.rough().sigma() / ctx.geom().d();
    return r * r * b0 * b0 * vtilde(ctx, opt);
}

/// Potential variance mu_z^2 x field variance [J^2].
inline double potential_variance(const TrapContext& ctx, const VtildeOptions& opt = {}) {
    return ctx.mu_z() * ctx.mu_z() * field_variance(ctx, opt);
}

namespace detail {

inline std::shared_mutex& smallxi_mutex() {
    static std::shared_mutex m;
    return m;
}

inline std::map<double, double>& smallxi_cache() {
    static std::map<double, double> cache;
    return cache;
}

} // namespace detail

/// c(d/y0) = (2/pi) int_0^inf f~^2(s) ds, the slope of V~ against xi/d as
/// xi/d -> 0. Cached per ratio; safe for concurrent callers.
inline double smallxi_constant(double d_over_y0) {
    {
        std::shared_lock lock(detail::smallxi_mutex());
        const auto& cache = detail::smallxi_cache();
        if (auto it = cache.find(d_over_y0); it != cache.end()) return it->second;
    }
    auto w = [](double) { return 2.0 / std::numbers::pi; };
    const double c = detail::integrate_ftilde2(d_over_y0, w, VtildeOptions{}).value;
    std::unique_lock lock(detail::smallxi_mutex());
    detail::smallxi_cache().emplace(d_over_y0, c);
    return c;
}

} // namespace wirenoise
