#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "wirenoise/biot_savart.hpp"
#include "wirenoise/design.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/profile.hpp"
#include "wirenoise/specfun.hpp"
#include "wirenoise/trap_noise.hpp"
#include "wirenoise/transfer.hpp"

// Validation suites: specfun, spectrum, transfer, variance and oracle. Each
// check is one numbered acceptance criterion (or an extra specfun reference
// check) with the measured figure of merit.
namespace wirenoise::validation {

struct Check {
    std::string suite;
    std::string id;  // criterion number, or a short name for extra checks
    std::string description;
    bool passed = false;
    std::string measured;
    double seconds = 0.0;
    // Set when the criterion cannot be met by a correct implementation; the
    // reason is in `note`.
    bool known_unattainable = false;
    std::string note;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"specfun", "spectrum", "transfer", "variance", "oracle"};
    return names;
}

namespace detail {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

template <class Body>
Check timed(std::string suite, std::string id, std::string description, Body&& body) {
    Check c{std::move(suite), std::move(id), std::move(description)};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.measured = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

} // namespace detail

inline std::vector<Check> run_specfun() {
    using detail::rel;
    std::vector<Check> out;
    out.push_back(detail::timed("specfun", "K", "K0(1), K1(1), K5(2) against 20-digit references to 1e-10", [](Check& c) {
        const double e = std::max({rel(specfun::bessel_k(0, 1.0), 0.42102443824070833334),
                                   rel(specfun::bessel_k(1, 1.0), 0.60190723019723457474),
                                   rel(specfun::bessel_k(5, 2.0), 9.4310491005964674428)});
        c.passed = e < 1e-10;
        c.measured = "max rel error " + detail::fmt(e, 3);
    }));
    out.push_back(detail::timed("specfun", "gamma", "Gamma(1/4) and lower gamma_3(1) = 2 - 5/e to 1e-12", [](Check& c) {
        const double e = std::max(rel(specfun::gamma(0.25), 3.6256099082219083119),
                                  rel(specfun::lower_incomplete_gamma(3, 1.0), 2.0 - 5.0 / std::numbers::e));
        c.passed = e < 1e-12;
        c.measured = "max rel error " + detail::fmt(e, 3);
    }));
    return out;
}

inline std::vector<Check> run_spectrum() {
    std::vector<Check> out;
    out.push_back(detail::timed("spectrum", "3", "int_0^inf P dq = sigma^2 within 1e-6 for alpha in {0.3, 0.5, 0.75, 1}", [](Check& c) {
        double worst = 0.0;
        for (double a : {0.3, 0.5, 0.75, 1.0}) {
            const EdgeRoughness r(3e-9, 20e-9, a);
            auto f = [&](double q) { return model_spectrum(r, q); };
            // exp-sinh handles the slow (q xi)^-(1 + 2 alpha) tail
            boost::math::quadrature::exp_sinh<double> integrator;
            const double total = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
            worst = std::max(worst, detail::rel(total, r.sigma() * r.sigma()));
        }
        c.passed = worst < 1e-6;
        c.measured = "max rel error " + detail::fmt(worst, 3);
    }));
    out.back().passed = out.back().passed && out.back().seconds < 1.0;
    out.push_back(detail::timed("spectrum", "4", "a(1/2) = 1 and P(1/2, q) = (2/pi)/(1 + q^2 xi^2) to 1e-12 on q xi in [0, 100]", [](Check& c) {
        double worst = std::abs(norm_constant(0.5) - 1.0);
        for (double k = 0.0; k <= 100.0; k += 0.05) {
            worst = std::max(worst, detail::rel(model_spectrum_dimensionless(0.5, k), 2.0 / std::numbers::pi / (1.0 + k * k)));
        }
        c.passed = worst < 1e-12;
        c.measured = "max rel error " + detail::fmt(worst, 3);
    }));
    return out;
}

inline std::vector<Check> run_transfer() {
    std::vector<Check> out;
    out.push_back(detail::timed("transfer", "5", "series reaches 1e-10 in <= 50 terms at d = 0.6 y0, strictly fewer at 2 y0 and 10 y0 (qd in [0.1, 10])", [](Check& c) {
        int worst06 = 0;
        bool ordered = true;
        for (double qd = 0.1; qd <= 10.0 * (1 + 1e-12); qd *= std::pow(100.0, 1.0 / 60.0)) {
            const int n06 = ftilde_series(qd, 0.6).terms;
            worst06 = std::max(worst06, n06);
            ordered = ordered && ftilde_series(qd, 2.0).terms < n06 && ftilde_series(qd, 10.0).terms < n06;
        }
        c.passed = worst06 <= 50 && ordered;
        c.measured = "max terms at 0.6 y0: " + std::to_string(worst06) + (ordered ? ", ordering holds" : ", ordering violated");
    }));
    out.push_back(detail::timed("transfer", "6", "low-q form within 1% for qd <= 0.01 (d/y0 = 10, 2, 0.6); f~^2 within 5% of the high-q form at qd = 12, d = 2 y0", [](Check& c) {
        double low = 0.0;
        for (double r : {10.0, 2.0, 0.6}) {
            for (double qd = 1e-5; qd <= 0.01 * (1 + 1e-12); qd *= std::pow(10.0, 0.25)) {
                low = std::max(low, detail::rel(ftilde_series(qd, r).value, ftilde_lowq(qd, r)));
            }
        }
        const double f = ftilde_series(12.0, 2.0).value;
        const double ratio = f * f / ftilde2_highq(12.0, 2.0);
        c.passed = low < 0.01 && std::abs(ratio - 1.0) < 0.05;
        c.measured = "low-q max rel error " + detail::fmt(low, 3) + "; high-q ratio " + detail::fmt(ratio, 4);
        c.known_unattainable = std::abs(ratio - 1.0) >= 0.05;
        if (c.known_unattainable) {
            c.note = "the high-q form is leading order in y0/d; at d = 2 y0 the edge-dominated asymptote carries an O(1) prefactor";
        }
    }));
    out.push_back(detail::timed("transfer", "7", "f~(d = 100 y0) within 0.5% of (qd)^2 K1(qd) for qd in [0.1, 5]", [](Check& c) {
        double worst = 0.0;
        for (double qd = 0.1; qd <= 5.0 * (1 + 1e-12); qd *= std::pow(50.0, 1.0 / 80.0)) {
            worst = std::max(worst, detail::rel(ftilde_series(qd, 100.0).value, ftilde_narrow(qd)));
        }
        c.passed = worst < 0.005;
        c.measured = "max rel error " + detail::fmt(worst, 3);
    }));
    return out;
}

namespace detail {

inline double argmax_on_log_grid(double lo, double hi, std::size_t n, const std::function<double(double)>& f) {
    double best = -1.0, at = lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
        const double v = f(x);
        if (v > best) {
            best = v;
            at = x;
        }
    }
    return at;
}

inline DesignInput worked_example() {
    return DesignInput{EdgeRoughness(3e-9, 20e-9, 0.5), units::Length{1e-6}, units::HeatFlowConstant{3e7},
                       units::FieldVariance{1e-14}, units::MagneticField{0.5e-4}, AtomSpecies::rb87()};
}

} // namespace detail

inline std::vector<Check> run_variance() {
    std::vector<Check> out;
    out.push_back(detail::timed("variance", "1", "smallxi_constant(d/y0 = 1) = 0.274 +- 0.003 in < 5 s", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const double v = smallxi_constant(1.0);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.passed = std::abs(v - 0.274) <= 0.003 && s < 5.0;
        c.measured = "c(1) = " + detail::fmt(v, 7) + " (deviation " + detail::fmt(v - 0.274, 3) + ") in " + detail::fmt(s, 3) + " s";
    }));
    out.push_back(detail::timed("variance", "2", "worked design example within the published ranges", [](Check& c) {
        const auto r = design_limits(detail::worked_example(), rounded_smallxi_constant);
        const double d = r.d_min.value * 1e6, i = r.i_max.value, g = r.b_grad_max.value / 100.0,
                     f = r.f_max.value / 1e3, a = r.ground_state_size.value * 1e9, t = r.roughness_temperature.value * 1e9;
        c.passed = d >= 5.3 && d <= 6.3 && i >= 0.16 && i <= 0.19 && g >= 10 && g <= 12 && f >= 180 && f <= 210 &&
                   a >= 16 && a <= 18.5 && t >= 64 && t <= 70;
        c.measured = "d_min " + detail::fmt(d, 4) + " um, I_max " + detail::fmt(i, 4) + " A, B' " + detail::fmt(g, 4) +
                     " T/cm, f_max " + detail::fmt(f, 4) + " kHz, size " + detail::fmt(a, 4) + " nm, T " + detail::fmt(t, 4) + " nK";
    }));
    out.push_back(detail::timed("variance", "9", "shape: f~^2 peak in [0.5, 2.5]; S~ peak rises from alpha 1 to 1/4 at xi = 33 d; V~ largest at d = xi; V~ alpha spread < 2% at xi = d/100", [](Check& c) {
        double lo = 1e9, hi = 0.0;
        for (double r : {0.6, 2.0, 10.0}) {
            const double at = detail::argmax_on_log_grid(0.05, 10.0, 400, [r](double s) {
                const double f = ftilde_series(s, r).value;
                return f * f;
            });
            lo = std::min(lo, at);
            hi = std::max(hi, at);
        }
        const bool a = lo >= 0.5 && hi <= 2.5;
        auto peak = [](double alpha) {
            return detail::argmax_on_log_grid(1e-3, 10.0, 800, [alpha](double s) { return stilde_reduced(s, 2.0, 1.0 / 33.0, alpha); });
        };
        const double p1 = peak(1.0), pq = peak(0.25);
        const bool b = pq > p1;
        const double v1 = vtilde(1.0, 1.0, 0.5), v001 = vtilde(1.0, 0.01, 0.5), v20 = vtilde(1.0, 20.0, 0.5);
        const bool cc = v1 > v001 && v1 > v20;
        const double w1 = vtilde(1.0, 100.0, 1.0), wq = vtilde(1.0, 100.0, 0.25);
        const double spread = std::abs(w1 - wq) / std::max(w1, wq);
        const bool d = spread < 0.02;
        c.passed = a && b && cc && d;
        c.measured = "(a) argmax in [" + detail::fmt(lo, 3) + ", " + detail::fmt(hi, 3) + "] (b) " + detail::fmt(p1, 3) + " -> " +
                     detail::fmt(pq, 3) + " (c) V~(1) " + detail::fmt(v1, 4) + " vs " + detail::fmt(v001, 4) + ", " +
                     detail::fmt(v20, 4) + " (d) spread " + detail::fmt(spread, 3);
    }));
    out.push_back(detail::timed("variance", "11", "V~ invariant under 10x length rescaling to 1e-9; V(2d)/V(d) = 1/16 to 1e-9", [](Check& c) {
        const double mu = constants::bohr_magneton.value;
        auto ctx = [mu](double scale, double d) {
            return TrapContext(EdgeRoughness(3e-9, 0.02 * d * scale, 0.5), WireGeometry(d * scale, 1e-7 * scale, d * scale, 0.1), mu);
        };
        const double a = vtilde(ctx(1.0, 5e-6)), b = vtilde(ctx(10.0, 5e-6));
        const double scale_err = detail::rel(b, a);
        const double law = field_variance(ctx(2.0, 5e-6)) / field_variance(ctx(1.0, 5e-6));
        const double law_err = std::abs(law * 16.0 - 1.0);
        c.passed = scale_err < 1e-9 && law_err < 1e-9;
        c.measured = "rescale rel diff " + detail::fmt(scale_err, 3) + ", 16 V(2d)/V(d) - 1 = " + detail::fmt(law_err, 3);
    }));
    return out;
}

inline std::vector<Check> run_oracle(std::uint64_t seed = 1000) {
    std::vector<Check> out;
    out.push_back(detail::timed("oracle", "8", "Biot-Savart: single mode within 1% for q0 d in {0.5, 1, 2}; rough-filament PSD within 10% on qd in [0.3, 3] (50 seeds) in < 5 min", [seed](Check& c) {
        constexpr double d = 2e-6;
        double mode = 0.0;
        for (double q0d : {0.5, 1.0, 2.0}) mode = std::max(mode, compare_single_mode(q0d, d, d / 1000.0, 0.1).rel_error);
        RoughFilamentSetup setup;
        setup.first_seed = seed;
        const auto rough = compare_rough_filament(EdgeRoughness(3e-9, 20e-9, 0.5), d, setup);
        c.passed = mode < 0.01 && rough.worst < 0.10;
        c.measured = "single-mode max rel error " + detail::fmt(mode, 3) + "; PSD max rel deviation " + detail::fmt(rough.worst, 3);
    }));
    out.back().passed = out.back().passed && out.back().seconds < 300.0;
    out.push_back(detail::timed("oracle", "10", "100-seed synthesis: mean sigma^ within 5%, mean alpha^ in [0.45, 0.55], ensemble C^(r) within 5% of sigma^2 for r <= 3 xi, in < 2 min", [seed](Check& c) {
        const EdgeRoughness r(3e-9, 20e-9, 0.5);
        constexpr std::size_t seeds = 100;
        const double dz = 1e-9;
        const auto ens = synthesize_ensemble(r, std::size_t{1} << 15, dz, seed, seeds);
        const double max_lag = 3.0 * r.xi();
        double sigma = 0.0, alpha = 0.0;
        std::vector<double> mean_c;
        for (const auto& p : ens) {
            const auto st = estimate_statistics(p, max_lag);
            sigma += st.sigma_hat / seeds;
            alpha += fit_hurst(p).alpha_hat / seeds;
            if (mean_c.empty()) mean_c.assign(st.c_hat.size(), 0.0);
            for (std::size_t k = 0; k < mean_c.size(); ++k) mean_c[k] += st.c_hat.y()[k] / seeds;
        }
        const double s2 = r.sigma() * r.sigma();
        double worst = 0.0;
        for (std::size_t k = 0; k < mean_c.size(); ++k) {
            worst = std::max(worst, std::abs(mean_c[k] - autocorrelation(r, static_cast<double>(k) * dz)) / s2);
        }
        const double sig_err = detail::rel(sigma, r.sigma());
        c.passed = sig_err < 0.05 && alpha >= 0.45 && alpha <= 0.55 && worst < 0.05;
        c.measured = "sigma^ rel error " + detail::fmt(sig_err, 3) + ", mean alpha^ " + detail::fmt(alpha, 4) +
                     ", max |C^ - C|/sigma^2 " + detail::fmt(worst, 3);
    }));
    out.back().passed = out.back().passed && out.back().seconds < 120.0;
    return out;
}

/// Run one suite by name, or "all".
inline std::vector<Check> run(const std::string& suite, std::uint64_t seed = 1000) {
    if (suite == "specfun") return run_specfun();
    if (suite == "spectrum") return run_spectrum();
    if (suite == "transfer") return run_transfer();
    if (suite == "variance") return run_variance();
    if (suite == "oracle") return run_oracle(seed);
    if (suite == "all") {
        std::vector<Check> out;
        for (const auto& name : suite_names()) {
            auto part = run(name, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw DomainError("unknown validation suite '" + suite + "'");
}

} // namespace wirenoise::validation
