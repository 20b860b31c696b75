#pragma once

#include <numbers>

#include "wirenoise/units.hpp"

// Physical constants, CODATA 2018 recommended values (SI).
namespace wirenoise::constants {

inline constexpr double pi = std::numbers::pi;

// Vacuum permeability, N A^-2. Since the 2019 SI redefinition this is measured,
// not exact; CODATA 2018: 1.25663706212(19)e-6.
inline constexpr units::Permeability mu0{1.25663706212e-6};

// Reduced Planck constant, J s (exact).
inline constexpr units::Action hbar{1.054571817e-34};

// Bohr magneton, J/T. CODATA 2018: 9.2740100783(28)e-24.
inline constexpr units::MagneticMoment bohr_magneton{9.2740100783e-24};

// Boltzmann constant, J/K (exact).
inline constexpr units::EntropyPerParticle boltzmann{1.380649e-23};

// Atomic mass constant, kg. CODATA 2018: 1.66053906660(50)e-27.
inline constexpr units::Mass atomic_mass_unit{1.66053906660e-27};

// 87Rb atomic mass, 86.909180531 u (AME2016).
inline constexpr units::Mass rubidium87_mass{86.909180531 * 1.66053906660e-27};

} // namespace wirenoise::constants
