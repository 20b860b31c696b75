#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "wirenoise/biot_savart.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/psd.hpp"
#include "wirenoise/rng.hpp"
#include "wirenoise/transfer.hpp"

using namespace wirenoise;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

constexpr double d0 = 2e-6;
constexpr double current = 0.1;

struct SingleMode {
    std::vector<double> z, b;
    double q0;
};

// Field of eps cos(q0 z + phase) sampled over four periods, path padded by
// max(10/q0, 10 d) plus a margin.
SingleMode single_mode(double q0d, double eps, double d = d0, double phase = 0.0) {
    const double q0 = q0d / d0;
    const double period = 2.0 * std::numbers::pi / q0;
    const double pad = 1.2 * std::max(10.0 / q0, 10.0 * d);
    SingleMode m{{}, {}, q0};
    for (int i = 0; i < 64; ++i) m.z.push_back(4.0 * period * i / 64.0);
    const auto path = FilamentPath::sinusoid(eps, q0, -pad, 4.0 * period + pad, current, phase);
    m.b = field_bz(path, d, m.z);
    return m;
}

} // namespace

TEST(FilamentPath, Validation) {
    EXPECT_THROW(FilamentPath({0.0, 1.0}, {0.0}, 1.0), ShapeError);
    EXPECT_THROW(FilamentPath({0.0, 0.0}, {0.0, 0.0}, 1.0), DomainError);
    EXPECT_THROW(FilamentPath({0.0, 1.0}, {0.0, 0.0}, 0.0), DomainError);
    EXPECT_THROW(FilamentPath::sinusoid(1e-9, 1e6, 0.0, 1e-4, 1.0, 0.0, 39), DomainError);
}

TEST(FieldBz, StraightFilamentHasNoAxialField) {
    std::vector<double> z, dy;
    for (int i = 0; i <= 2000; ++i) {
        z.push_back(-50e-6 + 50e-9 * i);
        dy.push_back(0.0);
    }
    const auto b = field_bz(FilamentPath(z, dy, 1.0), d0, {-5e-6, 0.0, 3e-6});
    for (double v : b) EXPECT_EQ(v, 0.0);
}

TEST(FieldBz, Preconditions) {
    const double q0 = 1.0 / d0;
    const auto path = FilamentPath::sinusoid(d0 / 1000.0, q0, -30e-6, 30e-6, current);
    EXPECT_THROW(field_bz(path, d0, {15e-6}), DomainError);  // inside the padding
    EXPECT_NO_THROW(field_bz(path, d0, {0.0}));
    const auto big = FilamentPath::sinusoid(d0 / 50.0, q0, -30e-6, 30e-6, current);
    EXPECT_THROW(field_bz(big, d0, {0.0}), DomainError);
    FieldOptions opt;
    opt.cutoff = 5.0 * d0;
    EXPECT_THROW(field_bz(path, d0, {0.0}, opt), DomainError);
}

TEST(FieldBz, CoarseSamplingIsReported) {
    // 40 segments per period shortens the polyline's mode by ~ (2 pi / 40)^2 / 12.
    const double q0 = 1.0 / d0;
    const auto path = FilamentPath::sinusoid(d0 / 1000.0, q0, -30e-6, 30e-6, current, 0.0, 40);
    EXPECT_THROW(field_bz(path, d0, {0.0, 1e-6}), DiscretizationError);
    FieldOptions loose;
    loose.discretization_tol = 1e-2;
    EXPECT_NO_THROW(field_bz(path, d0, {0.0, 1e-6}, loose));
}

TEST(FieldBz, SingleModeAmplitude) {
    for (double q0d : {0.5, 1.0, 2.0}) {
        const double eps = d0 / 1000.0;
        const auto m = single_mode(q0d, eps);
        const auto fit = fit_single_mode(m.z, m.b, m.q0);
        const double expect = single_mode_amplitude(eps, m.q0, d0, current);
        EXPECT_LT(rel(fit.amplitude, expect), 0.01) << q0d;
        // eps cos(q0 z) gives + sin(q0 z)
        EXPECT_NEAR(fit.phase, 0.0, 1e-3) << q0d;
        EXPECT_LT(fit.residual_rms, 1e-3 * fit.amplitude);
    }
}

TEST(FieldBz, LinearInAmplitude) {
    const auto a = single_mode(1.0, d0 / 1000.0);
    const auto b = single_mode(1.0, d0 / 500.0);
    const auto fa = fit_single_mode(a.z, a.b, a.q0);
    const auto fb = fit_single_mode(b.z, b.b, b.q0);
    EXPECT_LT(rel(fb.amplitude, 2.0 * fa.amplitude), 1e-3);
}

TEST(FieldBz, PhaseShiftTranslatesField) {
    const double phase = 0.7;
    const auto a = single_mode(1.0, d0 / 1000.0);
    const auto b = single_mode(1.0, d0 / 1000.0, d0, phase);
    const auto fa = fit_single_mode(a.z, a.b, a.q0);
    const auto fb = fit_single_mode(b.z, b.b, b.q0);
    // exact up to where the polyline nodes fall on the meander
    EXPECT_LT(rel(fa.amplitude, fb.amplitude), 1e-4);
    EXPECT_NEAR(fb.phase - fa.phase, phase, 1e-4);
    // pointwise: B(z; phase) = B(z + phase / q0; 0)
    for (std::size_t i = 0; i < a.z.size(); i += 8) {
        const double shifted = fa.amplitude * std::sin(a.q0 * a.z[i] + phase + fa.phase);
        EXPECT_NEAR(b.b[i], shifted, 1e-3 * fa.amplitude);
    }
}

TEST(FieldBz, DecayWithHeight) {
    // Normalised by B0/d, the amplitude goes as (q0 d)^2 K1(q0 d).
    for (double q0d : {0.5, 1.0, 2.0}) {
        const double eps = d0 / 1000.0;
        const auto near = single_mode(q0d, eps, d0);
        const auto far = single_mode(q0d, eps, 2.0 * d0);
        const double q0 = near.q0;
        auto b0_over_d = [](double d) { return constants::mu0.value * current / (2.0 * std::numbers::pi * d * d); };
        const double ratio = (fit_single_mode(far.z, far.b, q0).amplitude / b0_over_d(2.0 * d0)) /
                             (fit_single_mode(near.z, near.b, q0).amplitude / b0_over_d(d0));
        const double s = q0 * d0;
        const double expect = (4.0 * s * s * specfun::bessel_k(1, 2.0 * s)) / (s * s * specfun::bessel_k(1, s));
        EXPECT_LT(rel(ratio, expect), 0.01) << q0d;
    }
}

TEST(Psd, WhiteNoiseLevel) {
    // Unit-variance white noise at spacing dz: P = dz / pi.
    Rng rng(3);
    std::vector<double> x(1 << 16);
    for (double& v : x) v = rng.normal();
    const double dz = 0.25;
    const auto p = welch(x, dz, 256);
    double mean = 0.0;
    for (std::size_t j = 1; j + 1 < p.p.size(); ++j) mean += p.p[j];
    mean /= static_cast<double>(p.p.size() - 2);
    EXPECT_NEAR(mean, dz / std::numbers::pi, 0.01 * dz / std::numbers::pi);
}

TEST(Psd, SinusoidPowerIntegratesToVariance) {
    // A cos(q z) carries A^2/2; the periodogram peak integrates to it.
    const std::size_t n = 4096;
    const double dz = 1.0, a = 3.0;
    const double q = 2.0 * std::numbers::pi * 200.0 / (n * dz);
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = a * std::cos(q * dz * k);
    for (Window w : {Window::rectangular, Window::hann}) {
        const auto p = periodogram(x.data(), n, dz, w);
        const double dq = p.q[1];
        double total = 0.0;
        for (double v : p.p) total += v * dq;
        EXPECT_NEAR(total, a * a / 2.0, 1e-9);
    }
}

TEST(Psd, LorentzianProfileMatchesModel) {
    // alpha = 1/2 profiles against sigma^2 xi (2/pi) / (1 + q^2 xi^2)
    const EdgeRoughness r(1.0, 10.0, 0.5);
    PsdAccumulator acc;
    for (int s = 0; s < 20; ++s) acc.add(welch(synthesize(r, 1 << 14, 1.0, 40 + s).values(), 1.0, 512));
    const auto p = acc.mean();
    for (std::size_t j = 4; j < p.q.size() / 4; ++j) {
        const double model = model_spectrum(r, p.q[j]);
        EXPECT_LT(rel(p.p[j], model), 0.15) << p.q[j];
    }
}

TEST(Psd, Errors) {
    EXPECT_THROW(welch(std::vector<double>(10, 0.0), 1.0, 20), DomainError);
    PsdAccumulator acc;
    acc.add(Psd{{0.0, 1.0}, {1.0, 1.0}});
    EXPECT_THROW(acc.add(Psd{{0.0}, {1.0}}), ShapeError);
}

TEST(RoughFilament, EnsemblePsdMatchesNarrowWireSpectrum) {
    // sigma = 3 nm, xi = 20 nm, alpha = 0.5 filament at d = 2 um, 50 seeds.
    const EdgeRoughness r(3e-9, 20e-9, 0.5);
    const double dz = 8e-9, spacing = d0 / 4.0, cutoff = 25.0 * d0;
    PsdAccumulator acc;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto profile = synthesize(r, 1 << 18, dz, 1000 + s);
        const auto path = FilamentPath::from_profile(profile, current);
        std::vector<double> ze;
        for (double z = cutoff; z <= profile.length() - cutoff - dz; z += spacing) ze.push_back(z);
        FieldOptions opt;
        opt.cutoff = cutoff;
        acc.add(welch(field_bz(path, d0, ze, opt), spacing, 256));
    }
    const auto p = acc.mean();
    const double b0 = constants::mu0.value * current / (2.0 * std::numbers::pi * d0);
    double worst = 0.0;
    int bins = 0;
    for (std::size_t j = 1; j < p.q.size(); ++j) {
        const double qd = p.q[j] * d0;
        if (qd < 0.3 || qd > 3.0) continue;
        const double f = ftilde_narrow(qd);
        const double s = b0 * b0 * 9e-18 * 20e-9 / (d0 * d0) * model_spectrum_dimensionless(0.5, p.q[j] * 20e-9) * f * f;
        worst = std::max(worst, rel(p.p[j], s));
        ++bins;
    }
    EXPECT_GT(bins, 20);
    EXPECT_LT(worst, 0.10);
}
