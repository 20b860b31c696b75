#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wirenoise/design.hpp"

using namespace wirenoise;
using namespace wirenoise::units::literals;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// sqrt(V_max) = 1 mG, kappa = 3e7 A m^-3/2, x0 = 1 um, sigma = 3 nm, xi = 20 nm,
// B_z = 0.5 G.
DesignInput worked_example() {
    return DesignInput{EdgeRoughness(3e-9, 20e-9, 0.5), 1.0_um, units::HeatFlowConstant{3e7},
                       units::FieldVariance{1e-14}, 0.5_G, AtomSpecies::rb87()};
}

} // namespace

TEST(AtomSpecies, Rubidium) {
    const auto rb = AtomSpecies::rb87();
    EXPECT_DOUBLE_EQ(rb.mu_z.value, 9.2740100783e-24);
    EXPECT_NEAR(rb.mass.value, 1.4431608952e-25, 1e-34);
    EXPECT_NO_THROW(rb.validate());
    EXPECT_THROW((AtomSpecies{"x", units::Mass{0.0}, rb.mu_z}.validate()), DomainError);
}

TEST(MaxCurrent, FormulaAndScaling) {
    const units::HeatFlowConstant kappa{3e7};
    EXPECT_LT(rel(max_current(kappa, 6.0_um, 1.0_um).value, 0.18), 1e-14);
    EXPECT_LT(rel(max_current(kappa, 12.0_um, 1.0_um).value, 2.0 * max_current(kappa, 6.0_um, 1.0_um).value), 1e-14);
    EXPECT_LT(rel(max_current(kappa, 6.0_um, 4.0_um).value, 2.0 * max_current(kappa, 6.0_um, 1.0_um).value), 1e-14);
    EXPECT_THROW(max_current(kappa, 0.0_um, 1.0_um), DomainError);
}

TEST(DesignLimits, WorkedExampleRoundedConstant) {
    const auto r = design_limits(worked_example(), rounded_smallxi_constant);
    // Direct evaluation of the closed forms with CODATA 2018 constants.
    EXPECT_LT(rel(r.d_min.value, 5.6205e-6), 1e-4);
    EXPECT_LT(rel(r.i_max.value, 0.16862), 1e-4);
    EXPECT_LT(rel(r.b_grad_max.value, 1067.5), 1e-4);
    EXPECT_LT(rel(r.f_max.value, 192.61e3), 1e-4);
    EXPECT_LT(rel(r.ground_state_size.value, 17.375e-9), 1e-4);
    EXPECT_LT(rel(r.roughness_temperature.value, 67.17e-9), 1e-3);
    // Published rounded values
    EXPECT_NEAR(r.d_min.value, 6e-6, 0.5e-6);
    EXPECT_NEAR(r.i_max.value, 0.17, 0.005);
    EXPECT_NEAR(r.b_grad_max.value, 1100.0, 50.0);
    EXPECT_NEAR(r.f_max.value, 190e3, 7e3);
    EXPECT_NEAR(r.ground_state_size.value, 17e-9, 0.5e-9);
    EXPECT_NEAR(r.roughness_temperature.value, 67e-9, 0.5e-9);
    EXPECT_TRUE(r.applicable());
    EXPECT_EQ(r.smallxi_constant, 0.274);
}

TEST(DesignLimits, ComputedConstantCloseToRounded) {
    const auto a = design_limits(worked_example());
    const auto b = design_limits(worked_example(), rounded_smallxi_constant);
    EXPECT_NEAR(a.smallxi_constant, 0.274083, 1e-6);
    EXPECT_LT(rel(a.d_min.value, b.d_min.value), 1e-3);
}

TEST(DesignLimits, GradientIdentity) {
    const auto r = design_limits(worked_example(), 0.3);
    const double i = r.b_grad_max.value * r.d_min.value * r.d_min.value * 2.0 * std::numbers::pi / constants::mu0.value;
    EXPECT_LT(rel(i, r.i_max.value), 1e-14);
}

TEST(DesignLimits, VarianceExponent) {
    auto in = worked_example();
    const auto a = design_limits(in, 0.274);
    in.v_max = in.v_max * 8.0;
    const auto b = design_limits(in, 0.274);
    EXPECT_LT(rel(b.d_min.value, 0.5 * a.d_min.value), 1e-14);
}

TEST(DesignLimits, RoughnessExponents) {
    auto in = worked_example();
    const auto a = design_limits(in, 0.274);
    in.rough = EdgeRoughness(6e-9, 40e-9, 0.5);  // sigma^2 xi x 8
    const auto b = design_limits(in, 0.274);
    EXPECT_LT(rel(b.d_min.value, 2.0 * a.d_min.value), 1e-14);
    // B' ~ (sigma^2 xi)^(-1/3): a factor 8 halves it
    EXPECT_LT(rel(b.b_grad_max.value, 0.5 * a.b_grad_max.value), 1e-14);
}

TEST(DesignLimits, ApplicabilityWarning) {
    auto in = worked_example();
    in.rough = EdgeRoughness(3e-9, 2e-6, 0.5);
    in.v_max = units::FieldVariance{1e-8};
    const auto r = design_limits(in, 0.274);
    EXPECT_LT(r.d_min.value, 20e-6);
    EXPECT_FALSE(r.applicable());
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("10 xi"), std::string::npos);
}

TEST(DesignLimits, RejectsBadInput) {
    auto in = worked_example();
    in.bias_z = 0.0_G;
    EXPECT_THROW(design_limits(in, 0.274), DomainError);
    EXPECT_THROW(design_limits(worked_example(), 0.0), DomainError);
}

TEST(DesignLimits, ClosureAgainstFullQuadrature) {
    const auto in = worked_example();
    const auto r = design_limits(in);
    const auto v = variance_at_max_current(in, r.d_min);
    EXPECT_LT(rel(v.value, in.v_max.value), 0.03);
    const auto rounded = design_limits(in, rounded_smallxi_constant);
    EXPECT_LT(rel(variance_at_max_current(in, rounded.d_min).value, in.v_max.value), 0.03);
}

TEST(DesignSweep, MatchesSerial) {
    std::vector<DesignInput> inputs;
    for (int i = 1; i <= 12; ++i) {
        auto in = worked_example();
        in.v_max = units::FieldVariance{1e-14 * i};
        inputs.push_back(in);
    }
    const auto out = design_sweep(inputs, 0.274, 4);
    ASSERT_EQ(out.size(), inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        EXPECT_EQ(out[i].d_min.value, design_limits(inputs[i], 0.274).d_min.value);
    }
}
