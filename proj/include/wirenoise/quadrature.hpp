#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "wirenoise/errors.hpp"

// Adaptive Gauss-Kronrod integration over a list of panels. Each panel is
// integrated by Boost.Math's adaptive 31-point G-K rule; the summed error
// estimate must satisfy the requested tolerance or ConvergenceError is thrown.
namespace wirenoise::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;  // integral of |f|, useful for judging cancellation
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    unsigned max_depth = 15;  // bisection levels per panel; the summed error is checked afterwards
};

namespace detail {
inline constexpr unsigned kronrod_points = 31;
}

/// Integrate f over [a, b]. Infinite limits are allowed (Boost maps them to a
/// finite interval).
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    using rule = boost::math::quadrature::gauss_kronrod<double, detail::kronrod_points>;
    Result r;
    if (a == b) return r;
    if (std::isfinite(a) && std::isfinite(b)) {
        // Boost compares the error on the reference interval with the scaled
        // estimate, so narrow panels never meet a relative tolerance. Map
        // [a, b] onto [-1, 1] here instead.
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        auto g = [&](double x) { return half * f(mid + half * x); };
        r.value = rule::integrate(g, -1.0, 1.0, opt.max_depth, opt.rel_tol * 0.1, &r.error, &r.l1);
        if (half < 0.0) r.l1 = -r.l1;
    } else {
        r.value = rule::integrate(f, a, b, opt.max_depth, opt.rel_tol * 0.1, &r.error, &r.l1);
    }
    if (!std::isfinite(r.value)) {
        throw ConvergenceError("quadrature produced a non-finite value");
    }
    return r;
}

/// Integrate f over a finite [a, b] with tanh-sinh, which tolerates
/// integrable endpoint singularities and cusps such as r^(2 alpha) at 0.
template <class F>
Result integrate_endpoint(F&& f, double a, double b, const Options& opt = {}) {
    Result r;
    if (a == b) return r;
    boost::math::quadrature::tanh_sinh<double> integrator;
    // The reported error is the change between the last two levels, far
    // above the true error; asking for 1e-12 keeps it below typical targets.
    r.value = integrator.integrate(f, a, b, std::min(opt.rel_tol * 0.1, 1e-12), &r.error, &r.l1);
    if (!std::isfinite(r.value)) {
        throw ConvergenceError("quadrature produced a non-finite value");
    }
    return r;
}

/// Throw ConvergenceError unless the accumulated error estimate meets opt.
inline void check(const Result& total, const Options& opt) {
    // Roundoff floor: cancellation makes relative accuracy unreachable when the
    // result is many orders below the integral of |f|.
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * total.l1;
    const double allowed = std::max({opt.rel_tol * std::abs(total.value), opt.abs_tol, roundoff});
    if (total.error > allowed) {
        std::ostringstream msg;
        msg << "quadrature did not converge: error estimate " << total.error << " exceeds "
            << allowed << " (value " << total.value << ")";
        throw ConvergenceError(msg.str());
    }
}

/// Integrate f over consecutive panels [edges[i], edges[i+1]]. A non-zero
/// `seed` (e.g. a separately integrated first panel) is added before the
/// tolerance check.
template <class F>
Result integrate_panels(F&& f, std::span<const double> edges, const Options& opt = {}, Result seed = {}) {
    Result total = seed;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const Result p = integrate(f, edges[i], edges[i + 1], opt);
        total.value += p.value;
        total.error += p.error;
        total.l1 += p.l1;
    }
    check(total, opt);
    return total;
}

/// Same as integrate_panels for a single interval, with the tolerance check.
template <class F>
Result integrate_checked(F&& f, double a, double b, const Options& opt = {}) {
    const double edges[2] = {a, b};
    return integrate_panels(f, std::span<const double>(edges, 2), opt);
}

} // namespace wirenoise::quad
