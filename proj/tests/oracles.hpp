#pragma once

// Independent reference computations used only by the test suites. Each one
// takes a different route from the library code it checks.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

namespace oracle {

/// K_n(x) = int_0^inf exp(-x cosh t) cosh(n t) dt.
inline double bessel_k_integral(int n, double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [n, x](double t) {
        const double arg = -x * std::cosh(t) + n * t;
        if (arg < -745.0) return 0.0;
        return 0.5 * (std::exp(arg) + std::exp(-x * std::cosh(t) - n * t));
    };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

/// gamma_n(x) = int_0^x t^{n-1} e^{-t} dt by direct quadrature (x of either sign).
inline double lower_incomplete_gamma_quadrature(int n, double x) {
    auto f = [n](double t) { return std::pow(t, n - 1) * std::exp(-t); };
    boost::math::quadrature::tanh_sinh<double> integrator;
    return x > 0.0 ? integrator.integrate(f, 0.0, x, 1e-14) : -integrator.integrate(f, x, 0.0, 1e-14);
}

/// Transfer function from the thin-strip current distribution: a strip of
/// width y0 rigidly displaced by eps cos(qz) carries the potential-flow
/// perturbation j_y ~ cosh(q u)/cosh(q y0/2); Biot-Savart for B_z at height d
/// above the centre gives
///   f~ = (q^2 d^3 / y0) int_{-y0/2}^{y0/2} cosh(q u)/cosh(q y0/2) K1(q rho)/rho du,
/// rho = sqrt(d^2 + u^2). Works in units d = 1.
inline double ftilde_strip_integral(double qd, double d_over_y0) {
    const double y0 = 1.0 / d_over_y0;
    const double q = qd;
    auto g = [q, y0](double u) {
        const double rho = std::sqrt(1.0 + u * u);
        // cosh(q u)/cosh(q y0/2) in overflow-safe form
        const double c = std::exp(q * (std::abs(u) - 0.5 * y0)) * (1.0 + std::exp(-2.0 * q * std::abs(u))) /
                         (1.0 + std::exp(-q * y0));
        return c * boost::math::cyl_bessel_k(1, q * rho) / rho;
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double half = integrator.integrate(g, 0.0, 0.5 * y0, 1e-13);
    return q * q / y0 * 2.0 * half;
}

/// (2/pi) int_0^inf C(r) dr for the stretched exponential, closed form:
/// (2/pi) sigma^2 xi Gamma(1 + 1/(2 alpha)).
inline double stretched_exp_integral(double alpha) { return 2.0 / M_PI * std::tgamma(1.0 + 1.0 / (2.0 * alpha)); }

} // namespace oracle
