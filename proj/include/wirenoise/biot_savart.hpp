#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "wirenoise/constants.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/parallel.hpp"
#include "wirenoise/profile.hpp"
#include "wirenoise/psd.hpp"
#include "wirenoise/specfun.hpp"
#include "wirenoise/transfer.hpp"

// Brute-force field of a meandering current filament. The filament lies in
// the chip plane x = 0 along z, displaced sideways by dy(z); the atom sits at
// (x, y) = (d, 0). Only the z component is returned: a straight filament
// gives none, so B_z isolates the meander.
namespace wirenoise {

struct Sinusoid {
    double epsilon;  // amplitude [m]
    double q0;       // wavevector [1/m]
    double phase;    // dy = epsilon cos(q0 z + phase)
    int segments_per_period;
};

class FilamentPath {
public:
    /// Polyline through (z[i], dy[i]) carrying `current` in +z.
    FilamentPath(std::vector<double> z, std::vector<double> dy, double current)
        : z_(std::move(z)), dy_(std::move(dy)), current_(current) {
        if (z_.size() != dy_.size()) throw ShapeError("FilamentPath: z and dy differ in length");
        if (z_.size() < 2) throw DomainError("FilamentPath: need at least two nodes");
        if (!(current > 0.0)) throw DomainError("FilamentPath: current must be positive");
        for (std::size_t i = 1; i < z_.size(); ++i) {
            if (!(z_[i] > z_[i - 1])) throw DomainError("FilamentPath: z must be strictly increasing");
        }
    }

    /// epsilon cos(q0 z + phase) sampled at `segments_per_period` nodes per period.
    static FilamentPath sinusoid(double epsilon, double q0, double z_begin, double z_end, double current,
                                 double phase = 0.0, int segments_per_period = 64) {
        if (!(q0 > 0.0)) throw DomainError("FilamentPath: q0 must be positive");
        if (segments_per_period < 40) throw DomainError("FilamentPath: need at least 40 segments per period");
        if (!(z_end > z_begin)) throw DomainError("FilamentPath: empty z range");
        const double h = 2.0 * std::numbers::pi / (q0 * segments_per_period);
        const auto n = static_cast<std::size_t>(std::ceil((z_end - z_begin) / h)) + 1;
        std::vector<double> z(n), dy(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = z_begin + h * static_cast<double>(i);
            dy[i] = epsilon * std::cos(q0 * z[i] + phase);
        }
        FilamentPath p(std::move(z), std::move(dy), current);
        p.sinusoid_ = Sinusoid{epsilon, q0, phase, segments_per_period};
        return p;
    }

    /// A sampled edge profile used as the filament displacement, starting at z = 0.
    static FilamentPath from_profile(const EdgeProfile& profile, double current) {
        std::vector<double> z(profile.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = profile.dz() * static_cast<double>(i);
        return FilamentPath(std::move(z), profile.values(), current);
    }

    const std::vector<double>& z() const noexcept { return z_; }
    const std::vector<double>& dy() const noexcept { return dy_; }
    double current() const noexcept { return current_; }
    const std::optional<Sinusoid>& closed_form() const noexcept { return sinusoid_; }

    double max_abs_dy() const {
        double m = 0.0;
        for (double v : dy_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Path with half the segment length (closed-form paths only).
    FilamentPath refined() const {
        if (!sinusoid_) throw DomainError("FilamentPath: only a closed-form path can be refined");
        return sinusoid(sinusoid_->epsilon, sinusoid_->q0, z_.front(), z_.back(), current_, sinusoid_->phase,
                        2 * sinusoid_->segments_per_period);
    }

private:
    std::vector<double> z_;
    std::vector<double> dy_;
    double current_;
    std::optional<Sinusoid> sinusoid_;
};

struct FieldOptions {
    // Segments farther than this along z are skipped; must be >= 10 d.
    double cutoff = std::numeric_limits<double>::infinity();
    bool check_discretization = true;  // closed-form paths only
    double discretization_tol = 1e-3;  // max change relative to max |B_z|
    unsigned workers = 0;               // 0: worker_count()
};

namespace detail {

// Sum of exact straight-segment fields, z component only. For a segment from
// A to B seen from P with a = A - P, b = B - P:
//   B = mu0 I / (4 pi) (|a| + |b|) / (|a||b| (|a||b| + a.b)) (a x b),
// and (a x b)_z = a_x b_y - a_y b_x = d (dy_A - dy_B) since a_x = b_x = -d.
inline std::vector<double> sum_segments(const FilamentPath& path, double d, const std::vector<double>& z_eval,
                                        double cutoff, unsigned workers) {
    const auto& z = path.z();
    const auto& dy = path.dy();
    const double k = constants::mu0.value * path.current() / (4.0 * std::numbers::pi);
    std::vector<double> out(z_eval.size());
    parallel_for(
        z_eval.size(),
        [&](std::size_t j) {
            const double ze = z_eval[j];
            std::size_t lo = 0, hi = z.size() - 1;
            if (std::isfinite(cutoff)) {
                lo = static_cast<std::size_t>(std::lower_bound(z.begin(), z.end(), ze - cutoff) - z.begin());
                hi = static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), ze + cutoff) - z.begin());
                lo = lo > 0 ? lo - 1 : 0;
                hi = std::min(hi, z.size() - 1);
            }
            double sum = 0.0;
            double ay = dy[lo], az = z[lo] - ze;
            double ra = std::sqrt(d * d + ay * ay + az * az);
            for (std::size_t i = lo; i < hi; ++i) {
                const double by = dy[i + 1], bz = z[i + 1] - ze;
                const double rb = std::sqrt(d * d + by * by + bz * bz);
                const double dot = d * d + ay * by + az * bz;
                sum += (ra + rb) / (ra * rb * (ra * rb + dot)) * d * (ay - by);
                ay = by;
                az = bz;
                ra = rb;
            }
            out[j] = k * sum;
        },
        workers == 0 ? worker_count() : workers);
    return out;
}

} // namespace detail

/// delta B_z [T] at height d above the filament, at the positions z_eval.
inline std::vector<double> field_bz(const FilamentPath& path, double d, const std::vector<double>& z_eval,
                                    const FieldOptions& opt = {}) {
    if (!(d > 0.0)) throw DomainError("field_bz: d must be positive");
    if (z_eval.empty()) return {};
    if (!(path.max_abs_dy() < d / 100.0)) {
        throw DomainError("field_bz: max |dy| must stay below d/100 for a linear-response comparison");
    }
    if (!(opt.cutoff >= 10.0 * d)) throw DomainError("field_bz: cutoff must be at least 10 d");
    double padding = 10.0 * d;
    if (path.closed_form()) padding = std::max(padding, 10.0 / path.closed_form()->q0);
    const auto [lo, hi] = std::minmax_element(z_eval.begin(), z_eval.end());
    if (*lo - path.z().front() < padding || path.z().back() - *hi < padding) {
        std::ostringstream msg;
        msg << "field_bz: the path must extend " << padding << " m beyond the evaluation window on each side";
        throw DomainError(msg.str());
    }

    auto field = detail::sum_segments(path, d, z_eval, opt.cutoff, opt.workers);
    // A sampled path is an exact polyline, so halving its segments changes
    // nothing; only a closed-form path is checked against a finer sampling.
    if (opt.check_discretization && path.closed_form()) {
        const auto other = detail::sum_segments(path.refined(), d, z_eval, opt.cutoff, opt.workers);
        double scale = 0.0, change = 0.0;
        for (std::size_t j = 0; j < field.size(); ++j) {
            scale = std::max(scale, std::abs(field[j]));
            change = std::max(change, std::abs(field[j] - other[j]));
        }
        if (scale > 0.0 && change > opt.discretization_tol * scale) {
            std::ostringstream msg;
            msg << "field_bz: halving the segment length changes B_z by " << change / scale
                << " of its maximum (limit " << opt.discretization_tol << ")";
            throw DiscretizationError(msg.str());
        }
    }
    return field;
}

/// Analytic single-mode amplitude (B0/d) epsilon (q0 d)^2 K1(q0 d) with
/// B0 = mu0 I / (2 pi d).
inline double single_mode_amplitude(double epsilon, double q0, double d, double current) {
    const double b0 = constants::mu0.value * current / (2.0 * std::numbers::pi * d);
    const double s = q0 * d;
    return b0 / d * epsilon * s * s * specfun::bessel_k(1, s);
}

struct ModeFit {
    double amplitude;
    double phase;  // B ~ amplitude sin(q0 z + phase)
    double residual_rms;
};

/// Least-squares fit of A sin(q0 z) + C cos(q0 z) to samples.
inline ModeFit fit_single_mode(const std::vector<double>& z, const std::vector<double>& b, double q0) {
    if (z.size() != b.size()) throw ShapeError("fit_single_mode: z and b differ in length");
    if (z.size() < 3) throw DomainError("fit_single_mode: need at least three samples");
    double ss = 0, sc = 0, cc = 0, bs = 0, bc = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double s = std::sin(q0 * z[i]), c = std::cos(q0 * z[i]);
        ss += s * s;
        sc += s * c;
        cc += c * c;
        bs += b[i] * s;
        bc += b[i] * c;
    }
    const double det = ss * cc - sc * sc;
    if (!(std::abs(det) > 0.0)) throw DomainError("fit_single_mode: samples do not resolve the mode");
    const double a = (bs * cc - bc * sc) / det;
    const double c = (bc * ss - bs * sc) / det;
    double r2 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double e = b[i] - a * std::sin(q0 * z[i]) - c * std::cos(q0 * z[i]);
        r2 += e * e;
    }
    return {std::hypot(a, c), std::atan2(c, a), std::sqrt(r2 / static_cast<double>(z.size()))};
}

struct SingleModeComparison {
    double q0d;
    double measured;  // fitted amplitude [T]
    double expected;  // (B0/d) eps (q0 d)^2 K1(q0 d)
    double rel_error;
};

/// Field of eps cos(q0 z) over four periods (64 samples), path padded by
/// 1.2 max(10/q0, 10 d), fitted against the closed form.
inline SingleModeComparison compare_single_mode(double q0d, double d, double epsilon, double current) {
    const double q0 = q0d / d;
    const double period = 2.0 * std::numbers::pi / q0;
    const double pad = 1.2 * std::max(10.0 / q0, 10.0 * d);
    std::vector<double> z(64);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = 4.0 * period * static_cast<double>(i) / 64.0;
    const auto path = FilamentPath::sinusoid(epsilon, q0, -pad, 4.0 * period + pad, current);
    const auto fit = fit_single_mode(z, field_bz(path, d, z), q0);
    const double expect = single_mode_amplitude(epsilon, q0, d, current);
    return {q0d, fit.amplitude, expect, std::abs(fit.amplitude - expect) / expect};
}

struct RoughFilamentSetup {
    std::size_t nodes = std::size_t{1} << 18;
    double dz = 8e-9;
    std::size_t seeds = 50;
    std::uint64_t first_seed = 1000;
    std::size_t welch_segment = 256;
    double spacing_over_d = 0.25;  // evaluation grid
    double cutoff_over_d = 25.0;
    double current = 0.1;
};

struct RoughFilamentComparison {
    std::vector<double> qd;
    std::vector<double> measured;  // ensemble Welch PSD of B_z [T^2 m]
    std::vector<double> expected;  // B0^2 sigma^2 xi / d^2 P~ ((qd)^2 K1(qd))^2
    double worst = 0.0;            // max relative deviation over qd in [lo, hi]
};

/// Ensemble PSD of B_z above synthesized filaments against the narrow-wire
/// spectrum; `worst` is taken over qd in [qd_lo, qd_hi].
inline RoughFilamentComparison compare_rough_filament(const EdgeRoughness& rough, double d,
                                                      const RoughFilamentSetup& setup = {}, double qd_lo = 0.3,
                                                      double qd_hi = 3.0) {
    const double spacing = setup.spacing_over_d * d;
    const double cutoff = setup.cutoff_over_d * d;
    PsdAccumulator acc;
    for (std::size_t s = 0; s < setup.seeds; ++s) {
        const auto profile = synthesize(rough, setup.nodes, setup.dz, setup.first_seed + s);
        const auto path = FilamentPath::from_profile(profile, setup.current);
        std::vector<double> ze;
        for (double z = cutoff; z <= profile.length() - cutoff - setup.dz; z += spacing) ze.push_back(z);
        FieldOptions opt;
        opt.cutoff = cutoff;
        acc.add(welch(field_bz(path, d, ze, opt), spacing, setup.welch_segment));
    }
    const auto p = acc.mean();
    const double b0 = constants::mu0.value * setup.current / (2.0 * std::numbers::pi * d);
    const double scale = b0 * b0 * rough.sigma() * rough.sigma() * rough.xi() / (d * d);
    RoughFilamentComparison out;
    for (std::size_t j = 1; j < p.q.size(); ++j) {
        const double qd = p.q[j] * d;
        const double f = ftilde_narrow(qd);
        const double e = scale * model_spectrum_dimensionless(rough.alpha(), p.q[j] * rough.xi()) * f * f;
        out.qd.push_back(qd);
        out.measured.push_back(p.p[j]);
        out.expected.push_back(e);
        if (qd >= qd_lo && qd <= qd_hi) out.worst = std::max(out.worst, std::abs(p.p[j] - e) / e);
    }
    return out;
}

} // namespace wirenoise
