#pragma once

#include <cmath>
#include <compare>
#include <string>

// Compile-time dimension tags for SI quantities.
//
// Exponents are stored doubled so that half-integer powers (the heat-flow
// constant kappa carries m^-3/2) stay exact. A dimension mismatch in +, -, or
// assignment is a compile error; sqrt/cbrt static_assert that the result has
// representable exponents.
namespace wirenoise::units {

struct Dim {
    int length2 = 0;
    int mass2 = 0;
    int time2 = 0;
    int current2 = 0;
    int temperature2 = 0;

    constexpr bool operator==(const Dim&) const = default;
};

constexpr Dim operator+(Dim a, Dim b) {
    return {a.length2 + b.length2, a.mass2 + b.mass2, a.time2 + b.time2,
            a.current2 + b.current2, a.temperature2 + b.temperature2};
}

constexpr Dim operator-(Dim a, Dim b) {
    return {a.length2 - b.length2, a.mass2 - b.mass2, a.time2 - b.time2,
            a.current2 - b.current2, a.temperature2 - b.temperature2};
}

constexpr Dim scale(Dim a, int num, int den) {
    return {a.length2 * num / den, a.mass2 * num / den, a.time2 * num / den,
            a.current2 * num / den, a.temperature2 * num / den};
}

constexpr bool divisible(Dim a, int den) {
    return a.length2 % den == 0 && a.mass2 % den == 0 && a.time2 % den == 0 &&
           a.current2 % den == 0 && a.temperature2 % den == 0;
}

/// Human-readable exponent string, e.g. "m^2 kg s^-2 A^-1".
inline std::string to_string(Dim d) {
    std::string out;
    auto put = [&out](const char* sym, int twice) {
        if (twice == 0) return;
        if (!out.empty()) out += ' ';
        out += sym;
        if (twice == 2) return;
        out += '^';
        if (twice % 2 == 0) {
            out += std::to_string(twice / 2);
        } else {
            out += std::to_string(twice) + "/2";
        }
    };
    put("m", d.length2);
    put("kg", d.mass2);
    put("s", d.time2);
    put("A", d.current2);
    put("K", d.temperature2);
    return out.empty() ? "1" : out;
}

template <Dim D>
struct Quantity {
    static constexpr Dim dim = D;
    double value = 0.0;

    constexpr Quantity() = default;
    constexpr explicit Quantity(double v) : value(v) {}

    constexpr Quantity& operator+=(Quantity o) { value += o.value; return *this; }
    constexpr Quantity& operator-=(Quantity o) { value -= o.value; return *this; }
    constexpr Quantity& operator*=(double s) { value *= s; return *this; }
    constexpr Quantity& operator/=(double s) { value /= s; return *this; }

    constexpr auto operator<=>(const Quantity&) const = default;
};

template <Dim D>
constexpr Quantity<D> operator+(Quantity<D> a, Quantity<D> b) { return Quantity<D>{a.value + b.value}; }
template <Dim D>
constexpr Quantity<D> operator-(Quantity<D> a, Quantity<D> b) { return Quantity<D>{a.value - b.value}; }
template <Dim D>
constexpr Quantity<D> operator-(Quantity<D> a) { return Quantity<D>{-a.value}; }
template <Dim D>
constexpr Quantity<D> operator*(Quantity<D> a, double s) { return Quantity<D>{a.value * s}; }
template <Dim D>
constexpr Quantity<D> operator*(double s, Quantity<D> a) { return Quantity<D>{a.value * s}; }
template <Dim D>
constexpr Quantity<D> operator/(Quantity<D> a, double s) { return Quantity<D>{a.value / s}; }

template <Dim A, Dim B>
constexpr Quantity<A + B> operator*(Quantity<A> a, Quantity<B> b) {
    return Quantity<A + B>{a.value * b.value};
}

template <Dim A, Dim B>
constexpr Quantity<A - B> operator/(Quantity<A> a, Quantity<B> b) {
    return Quantity<A - B>{a.value / b.value};
}

template <Dim D>
constexpr Quantity<Dim{} - D> operator/(double s, Quantity<D> a) {
    return Quantity<Dim{} - D>{s / a.value};
}

template <Dim D>
Quantity<scale(D, 1, 2)> sqrt(Quantity<D> q) {
    static_assert(divisible(D, 2), "sqrt would produce a quarter-integer exponent");
    return Quantity<scale(D, 1, 2)>{std::sqrt(q.value)};
}

template <Dim D>
Quantity<scale(D, 1, 3)> cbrt(Quantity<D> q) {
    static_assert(divisible(D, 3), "cbrt would produce a non-half-integer exponent");
    return Quantity<scale(D, 1, 3)>{std::cbrt(q.value)};
}

template <Dim D>
constexpr Quantity<D + D> square(Quantity<D> q) { return q * q; }

// Base and derived dimensions (doubled exponents).
inline constexpr Dim dimensionless{};
inline constexpr Dim length_dim{2, 0, 0, 0, 0};
inline constexpr Dim mass_dim{0, 2, 0, 0, 0};
inline constexpr Dim time_dim{0, 0, 2, 0, 0};
inline constexpr Dim current_dim{0, 0, 0, 2, 0};
inline constexpr Dim temperature_dim{0, 0, 0, 0, 2};

inline constexpr Dim field_dim = mass_dim - time_dim - time_dim - current_dim;    // T = kg s^-2 A^-1
inline constexpr Dim energy_dim = mass_dim + length_dim + length_dim - time_dim - time_dim;
inline constexpr Dim moment_dim = energy_dim - field_dim;                         // J/T = A m^2
inline constexpr Dim permeability_dim = field_dim + length_dim - current_dim;     // T m / A
inline constexpr Dim kappa_dim = current_dim - length_dim - scale(length_dim, 1, 2);  // A m^-3/2

using Dimensionless = Quantity<dimensionless>;
using Length = Quantity<length_dim>;
using Mass = Quantity<mass_dim>;
using Time = Quantity<time_dim>;
using Current = Quantity<current_dim>;
using Temperature = Quantity<temperature_dim>;
using Frequency = Quantity<Dim{} - time_dim>;
using MagneticField = Quantity<field_dim>;
using FieldGradient = Quantity<field_dim - length_dim>;
using FieldVariance = Quantity<field_dim + field_dim>;
using Energy = Quantity<energy_dim>;
using MagneticMoment = Quantity<moment_dim>;
using Permeability = Quantity<permeability_dim>;
using Action = Quantity<energy_dim + time_dim>;
using EntropyPerParticle = Quantity<energy_dim - temperature_dim>;
using HeatFlowConstant = Quantity<kappa_dim>;

namespace literals {
constexpr Length operator""_m(long double v) { return Length{static_cast<double>(v)}; }
constexpr Length operator""_um(long double v) { return Length{static_cast<double>(v) * 1e-6}; }
constexpr Length operator""_nm(long double v) { return Length{static_cast<double>(v) * 1e-9}; }
constexpr Current operator""_A(long double v) { return Current{static_cast<double>(v)}; }
constexpr MagneticField operator""_T(long double v) { return MagneticField{static_cast<double>(v)}; }
constexpr MagneticField operator""_G(long double v) { return MagneticField{static_cast<double>(v) * 1e-4}; }
} // namespace literals

} // namespace wirenoise::units
