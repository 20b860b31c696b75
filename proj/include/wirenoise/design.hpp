#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wirenoise/constants.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/parallel.hpp"
#include "wirenoise/trap_noise.hpp"
#include "wirenoise/units.hpp"

// Design limits for a roughness-limited wire trap. The wire cross-section is
// tied to the trap height (y0 = d) and the current to the heat-flow limit
// I = kappa y0 sqrt(x0). Setting the small-xi variance c (sigma/d)^2 B0^2 xi/d
// equal to V_max then fixes the closest approach d_min, and everything else
// follows from it.
namespace wirenoise {

struct AtomSpecies {
    std::string label;
    units::Mass mass;
    units::MagneticMoment mu_z;

    void validate() const {
        if (!(mass.value > 0.0)) throw DomainError("AtomSpecies: mass must be positive");
        if (!(mu_z.value > 0.0)) throw DomainError("AtomSpecies: mu_z must be positive");
    }

    /// 87Rb in |F=2, m_F=2>: g_F m_F = 1, so mu_z is one Bohr magneton.
    static AtomSpecies rb87() { return {"87Rb F=2 mF=2", constants::rubidium87_mass, constants::bohr_magneton}; }
};

struct DesignInput {
    EdgeRoughness rough;
    units::Length x0;
    units::HeatFlowConstant kappa;
    units::FieldVariance v_max;
    units::MagneticField bias_z;
    AtomSpecies atom = AtomSpecies::rb87();

    void validate() const {
        if (!(x0.value > 0.0)) throw DomainError("DesignInput: x0 must be positive");
        if (!(kappa.value > 0.0)) throw DomainError("DesignInput: kappa must be positive");
        if (!(v_max.value > 0.0)) throw DomainError("DesignInput: v_max must be positive");
        if (!(bias_z.value > 0.0)) throw DomainError("DesignInput: bias_z must be positive");
        atom.validate();
    }
};

struct DesignResult {
    units::Length d_min;
    units::Current i_max;
    units::FieldGradient b_grad_max;
    units::Frequency f_max;
    units::Length ground_state_size;
    units::Temperature roughness_temperature;
    double smallxi_constant = 0.0;  // the c actually used
    std::vector<std::string> warnings;

    bool applicable() const noexcept { return warnings.empty(); }
};

/// Three-digit value of the small-xi constant at d = y0; pass it to design_limits to
/// reproduce hand calculations that use the rounded figure.
inline constexpr double rounded_smallxi_constant = 0.274;

/// Heat-limited current kappa y0 sqrt(x0).
inline units::Current max_current(units::HeatFlowConstant kappa, units::Length y0, units::Length x0) {
    if (!(kappa.value > 0.0 && y0.value > 0.0 && x0.value > 0.0)) {
        throw DomainError("max_current: inputs must be positive");
    }
    return kappa * y0 * sqrt(x0);
}

inline DesignResult design_limits(const DesignInput& in, double c) {
    using namespace units;
    in.validate();
    if (!(c > 0.0)) throw DomainError("design_limits: small-xi constant must be positive");

    const Length sigma{in.rough.sigma()};
    const Length xi{in.rough.xi()};
    const auto mu0_kappa = constants::mu0 * in.kappa / (2.0 * constants::pi);

    DesignResult r;
    r.smallxi_constant = c;
    r.d_min = cbrt(c * square(sigma) * xi * square(mu0_kappa) * in.x0 / in.v_max);
    r.i_max = max_current(in.kappa, r.d_min, in.x0);
    r.b_grad_max = constants::mu0 * r.i_max / (2.0 * constants::pi * square(r.d_min));

    const auto omega_per_grad = sqrt(in.atom.mu_z / (in.atom.mass * in.bias_z));
    const Frequency omega = r.b_grad_max * omega_per_grad;
    r.f_max = omega / (2.0 * constants::pi);
    // sqrt(hbar / (2 m omega)): the rms width of the ground-state wavefunction
    r.ground_state_size = sqrt(constants::hbar / (2.0 * in.atom.mass * omega));
    r.roughness_temperature = in.atom.mu_z * sqrt(in.v_max) / constants::boltzmann;

    if (r.d_min.value < 10.0 * xi.value) {
        r.warnings.push_back("d_min = " + std::to_string(r.d_min.value) + " m is below 10 xi; the small-xi law behind d_min does not apply");
    }
    return r;
}

/// Uses the computed c for a square-profile wire (d = y0).
inline DesignResult design_limits(const DesignInput& in) { return design_limits(in, smallxi_constant(1.0)); }

/// Full-quadrature field variance for the design geometry at height d:
/// y0 = d and I = kappa d sqrt(x0).
inline units::FieldVariance variance_at_max_current(const DesignInput& in, units::Length d) {
    in.validate();
    const auto current = max_current(in.kappa, d, in.x0);
    const TrapContext ctx(in.rough, WireGeometry(d.value, in.x0.value, d.value, current.value), in.atom.mu_z.value);
    return units::FieldVariance{field_variance(ctx)};
}

/// Evaluate many designs; workers default to worker_count().
inline std::vector<DesignResult> design_sweep(const std::vector<DesignInput>& inputs, double c, unsigned workers = 0) {
    std::vector<DesignResult> out(inputs.size());
    parallel_for(inputs.size(), [&](std::size_t i) { out[i] = design_limits(inputs[i], c); },
                 workers == 0 ? worker_count() : workers);
    return out;
}

} // namespace wirenoise
