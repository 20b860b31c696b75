#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wirenoise/constants.hpp"
#include "wirenoise/trap_noise.hpp"

using namespace wirenoise;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double mu_b = constants::bohr_magneton.value;

TrapContext make_ctx(double scale, double d_over_y0, double d_over_xi, double alpha, double current = 0.17) {
    const double d = 6e-6 * scale;
    return TrapContext(EdgeRoughness(3e-9, d / d_over_xi, alpha), WireGeometry(d / d_over_y0, 0.5e-6 * scale, d, current),
                       mu_b);
}

} // namespace

TEST(TrapContext, Validation) {
    EXPECT_THROW(TrapContext(EdgeRoughness(1e-9, 1e-8, 0.5), WireGeometry(1e-6, 1e-7, 1e-6, 1.0), 0.0), DomainError);
    const auto ctx = make_ctx(1.0, 2.0, 50.0, 0.5);
    EXPECT_NEAR(ctx.d_over_y0(), 2.0, 1e-14);
    EXPECT_NEAR(ctx.d_over_xi(), 50.0, 1e-12);
}

TEST(Stilde, SmallXiIsRoughnessIndependent) {
    for (double alpha : {0.25, 0.5, 1.0}) {
        for (double s = 0.1; s <= 5.0; s *= 1.2) {
            const double f = ftilde_series(s, 1.0).value;
            EXPECT_LT(rel(stilde_reduced(s, 1.0, 100.0, alpha), 2.0 / std::numbers::pi * f * f), 0.01)
                << "alpha=" << alpha << " s=" << s;
        }
    }
}

TEST(Stilde, LargeXiLowFrequency) {
    // xi = 33 d, qd << 1: f~ ~ qd for a narrow wire, so S~ ~ (qd)^2 P~.
    for (double s : {1e-3, 3e-3, 1e-2}) {
        const double p = model_spectrum_dimensionless(0.5, s * 33.0);
        EXPECT_LT(rel(stilde_reduced(s, 10.0, 1.0 / 33.0, 0.5), s * s * p), 0.01) << s;
    }
}

TEST(Stilde, VanishesAtZeroFrequency) {
    double prev = stilde_reduced(1e-2, 1.0, 1.0, 0.5);
    for (double s = 1e-3; s > 1e-9; s /= 10.0) {
        const double v = stilde_reduced(s, 1.0, 1.0, 0.5);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-16);
}

TEST(Stilde, DimensionalWrapperMatchesReduced) {
    const auto ctx = make_ctx(1.0, 1.0, 300.0, 0.5);
    const double q = 2e5;
    EXPECT_DOUBLE_EQ(stilde(q, ctx), stilde_reduced(q * 6e-6, ctx.d_over_y0(), ctx.d_over_xi(), 0.5));
}

TEST(NoiseSpectrum, ScalingAndDefinition) {
    const auto a = make_ctx(1.0, 1.0, 300.0, 0.5, 0.17);
    const auto b = make_ctx(1.0, 1.0, 300.0, 0.5, 0.34);
    for (double q : {1e3, 1e5, 3e5, 1e6}) {
        EXPECT_LT(rel(noise_spectrum(q, b), 4.0 * noise_spectrum(q, a)), 1e-14);
        const double b0 = a.geom().b0();
        const double scale = mu_b * mu_b * b0 * b0 * 9e-18 * a.rough().xi() / (36e-12);
        EXPECT_LT(rel(noise_spectrum(q, a) / scale, stilde(q, a)), 1e-14);
        EXPECT_DOUBLE_EQ(noise_spectrum(q, a), mu_b * mu_b * field_noise_spectrum(q, a));
    }
}

TEST(NoiseSpectrum, IntegratesToVariance) {
    const auto ctx = make_ctx(1.0, 1.0, 300.0, 0.5);
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double q) { return q > 0.0 ? noise_spectrum(q, ctx) : 0.0; };
    const double direct = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    EXPECT_LT(rel(direct, potential_variance(ctx)), 1e-6);
}

TEST(Vtilde, SmallXiLaw) {
    const double v = vtilde(1.0, 100.0, 0.5);
    EXPECT_LT(rel(v, 0.274 * 0.01), 0.02);
}

TEST(Vtilde, PeaksNearXiEqualD) {
    const double at1 = vtilde(1.0, 1.0, 0.5);
    EXPECT_GT(at1, vtilde(1.0, 20.0, 0.5));
    EXPECT_GT(at1, vtilde(1.0, 0.01, 0.5));
}

TEST(Vtilde, HurstInsensitiveAtSmallXi) {
    const double a1 = vtilde(1.0, 100.0, 1.0);
    const double aq = vtilde(1.0, 100.0, 0.25);
    EXPECT_LT(std::abs(a1 - aq) / a1, 0.02);
}

TEST(Vtilde, AgreesWithIndependentQuadrature) {
    boost::math::quadrature::exp_sinh<double> integrator;
    struct Case {
        double r, dxi, alpha;
    };
    for (const Case& c : {Case{1.0, 1.0, 0.5}, Case{2.0, 100.0, 0.25}, Case{0.6, 0.05, 1.0}}) {
        auto f = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double ft = oracle::ftilde_strip_integral(s, c.r);
            return model_spectrum_dimensionless(c.alpha, s / c.dxi) * ft * ft;
        };
        const double ref = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-10) / c.dxi;
        EXPECT_LT(rel(vtilde(c.r, c.dxi, c.alpha), ref), 1e-6) << c.r << " " << c.dxi << " " << c.alpha;
    }
}

TEST(Vtilde, CutoffInsensitive) {
    for (double dxi : {0.01, 1.0, 1000.0}) {
        VtildeOptions wide;
        wide.s_max = 80.0;
        const double a = vtilde(1.0, dxi, 0.5);
        const double b = vtilde(1.0, dxi, 0.5, wide);
        EXPECT_LT(rel(a, b), 1e-8) << dxi;
        const auto full = vtilde_full(1.0, dxi, 0.5);
        EXPECT_LT(full.high_tail, 1e-20 * full.value);
        EXPECT_LT(full.error, 1e-6 * full.value);
    }
}

TEST(Vtilde, InvariantUnderLengthRescaling) {
    const auto a = make_ctx(1.0, 1.5, 3.0, 0.7);
    const auto b = make_ctx(10.0, 1.5, 3.0, 0.7);
    EXPECT_LT(rel(vtilde(a), vtilde(b)), 1e-9);
}

TEST(FieldVariance, InverseFourthPowerLaw) {
    // fixed d/y0, d/xi, sigma and current
    const auto a = make_ctx(1.0, 1.0, 300.0, 0.5);
    const auto b = make_ctx(2.0, 1.0, 300.0, 0.5);
    EXPECT_LT(rel(field_variance(b) / field_variance(a), 1.0 / 16.0), 1e-9);
    EXPECT_DOUBLE_EQ(potential_variance(a), mu_b * mu_b * field_variance(a));
}

TEST(Stilde, RougherEdgeShiftsPeakUp) {
    auto argmax = [](double alpha) {
        double best = -1.0, at = 0.0;
        for (double s = 1e-3; s < 10.0; s *= 1.01) {
            const double v = stilde_reduced(s, 1.0, 1.0 / 33.0, alpha);
            if (v > best) {
                best = v;
                at = s;
            }
        }
        return at;
    };
    EXPECT_GT(argmax(0.25), argmax(1.0));
}

TEST(Stilde, RougherEdgeSuppressesLowFrequencies) {
    // xi = d, q xi <= 0.3
    for (double s = 1e-3; s <= 0.3; s *= 1.3) {
        EXPECT_LT(stilde_reduced(s, 1.0, 1.0, 0.25), stilde_reduced(s, 1.0, 1.0, 1.0)) << s;
    }
}

TEST(SmallXiConstant, SquareWire) { EXPECT_NEAR(smallxi_constant(1.0), 0.274, 0.003); }

TEST(SmallXiConstant, FrozenValues) {
    // Independent 30-digit quadrature of (2/pi) int f~^2 ds.
    EXPECT_LT(rel(smallxi_constant(1.0), 0.27408272525556), 1e-7);
    EXPECT_LT(rel(smallxi_constant(10.0), 0.546666911533812), 1e-7);
    // narrow-wire limit (2/pi) int s^4 K1(s)^2 ds
    EXPECT_LT(rel(smallxi_constant(1e4), 0.55223308363883), 1e-5);
}

TEST(SmallXiConstant, IsTheSmallXiSlope) {
    for (double r : {1.0, 3.0}) {
        const double ratio = vtilde(r, 1e3, 0.5) * 1e3 / smallxi_constant(r);
        EXPECT_NEAR(ratio, 1.0, 0.005) << r;
    }
}

TEST(SmallXiConstant, ConcurrentCallsAgree) {
    std::vector<double> out(8);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < out.size(); ++i) {
        pool.emplace_back([&out, i] { out[i] = smallxi_constant(1.0 + 0.25 * static_cast<double>(i % 4)); });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 4; i < out.size(); ++i) EXPECT_EQ(out[i], out[i - 4]);
}

TEST(Vtilde, DomainErrors) {
    EXPECT_THROW(vtilde(0.5, 1.0, 0.5), DomainError);
    EXPECT_THROW(vtilde(1.0, 0.0, 0.5), DomainError);
    EXPECT_THROW(smallxi_constant(0.4), DomainError);
}
