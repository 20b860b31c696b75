#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wirenoise/constants.hpp"
#include "wirenoise/design.hpp"
#include "wirenoise/errors.hpp"

// Key-value configuration files:
//
//   # comment
//   [roughness]
//   sigma = 3 nm
//
// Keys are addressed as "section.key". Every key must appear in the schema
// passed to Config::parse, duplicates are rejected, and values are stored
// verbatim until read with a unit-aware getter, which returns SI.
namespace wirenoise::config {

enum class Kind { length, field, current, kappa, number, integer, text };

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Unit {
    const char* suffix;
    Kind kind;
    double divisor;  // SI value = value / divisor; dividing by 1e9 is exact where multiplying by 1e-9 is not
};

// "um" and "u" + micro sign spellings are all accepted for micrometres.
inline constexpr Unit units[] = {
    {"m", Kind::length, 1.0},         {"mm", Kind::length, 1e3},        {"um", Kind::length, 1e6},
    {"\xC2\xB5m", Kind::length, 1e6},  {"\xCE\xBCm", Kind::length, 1e6},  {"nm", Kind::length, 1e9},
    {"T", Kind::field, 1.0},          {"mT", Kind::field, 1e3},         {"G", Kind::field, 1e4},
    {"mG", Kind::field, 1e7},         {"A", Kind::current, 1.0},        {"mA", Kind::current, 1e3},
    {"A/m^1.5", Kind::kappa, 1.0},    {"A/m^(3/2)", Kind::kappa, 1.0},
};

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::length: return "a length (m, mm, um, nm)";
        case Kind::field: return "a magnetic field (T, mT, G, mG)";
        case Kind::current: return "a current (A, mA)";
        case Kind::kappa: return "a heat-flow constant (A/m^1.5)";
        case Kind::number: return "a number";
        case Kind::integer: return "an integer";
        case Kind::text: return "text";
    }
    return "a value";
}

} // namespace detail

/// Parse "3 nm", "3nm", "0.5 G" or a bare SI number into SI units.
inline double parse_quantity(const std::string& key, const std::string& text, Kind kind) {
    const std::string s = detail::trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr == s.data()) throw ParseError(key, "expected " + std::string(detail::kind_name(kind)) + ", got '" + text + "'");
    if (!std::isfinite(value)) throw ParseError(key, "value must be finite");
    const std::string suffix = detail::trim(std::string(ptr, s.data() + s.size()));
    if (suffix.empty()) return value;
    if (kind == Kind::number || kind == Kind::integer) throw ParseError(key, "unexpected unit '" + suffix + "' on a plain number");
    for (const auto& u : detail::units) {
        if (suffix == u.suffix) {
            if (u.kind != kind) throw ParseError(key, "unit '" + suffix + "' is not " + detail::kind_name(kind));
            return value / u.divisor;
        }
    }
    throw ParseError(key, "unknown unit '" + suffix + "'");
}

inline double parse_positive(const std::string& key, const std::string& text, Kind kind) {
    const double v = parse_quantity(key, text, kind);
    if (!(v > 0.0)) throw ParseError(key, "must be positive");
    return v;
}

inline long long parse_integer(const std::string& key, const std::string& text) {
    const std::string s = detail::trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw ParseError(key, "expected an integer, got '" + text + "'");
    return v;
}

using Schema = std::map<std::string, Kind>;

class Config {
public:
    static Config parse(std::istream& is, const Schema& schema) {
        Config cfg;
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw ParseError("line " + std::to_string(lineno), "unterminated section header");
                section = detail::trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno), "expected key = value");
            const std::string name = detail::trim(line.substr(0, eq));
            const std::string key = section.empty() ? name : section + "." + name;
            if (!schema.contains(key)) throw ParseError(key, "unknown key");
            if (cfg.values_.contains(key)) throw ParseError(key, "duplicate key");
            cfg.values_[key] = detail::trim(line.substr(eq + 1));
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.contains(key); }

    const std::string& raw(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ParseError(key, "missing required key");
        return it->second;
    }

    double positive(const std::string& key, Kind kind) const { return parse_positive(key, raw(key), kind); }

    double positive_or(const std::string& key, Kind kind, double fallback) const {
        return has(key) ? positive(key, kind) : fallback;
    }

    long long integer(const std::string& key) const { return parse_integer(key, raw(key)); }

    std::string text_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? raw(key) : fallback;
    }

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// ---------------------------------------------------------------------------
// Design configuration

enum class SweepSpacing { linear, log };

struct Sweep {
    std::string parameter;  // sigma, xi, alpha, x0, kappa or sqrt_v_max
    double from = 0.0;      // SI
    double to = 0.0;
    int steps = 2;
    SweepSpacing spacing = SweepSpacing::linear;

    std::vector<double> values() const {
        std::vector<double> out(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i) {
            const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
            out[static_cast<std::size_t>(i)] =
                spacing == SweepSpacing::log ? from * std::pow(to / from, t) : from + (to - from) * t;
        }
        return out;
    }
};

struct DesignConfig {
    DesignInput input;
    std::optional<double> smallxi;  // empty: computed for d = y0
    std::optional<Sweep> sweep;
};

inline const Schema& design_schema() {
    static const Schema s = {
        {"roughness.sigma", Kind::length},   {"roughness.xi", Kind::length},     {"roughness.alpha", Kind::number},
        {"wire.thickness", Kind::length},    {"wire.kappa", Kind::kappa},        {"trap.sqrt_v_max", Kind::field},
        {"trap.bias_z", Kind::field},        {"atom.species", Kind::text},       {"atom.mass_u", Kind::number},
        {"atom.mu_z_bohr", Kind::number},    {"design.smallxi", Kind::text},     {"sweep.parameter", Kind::text},
        {"sweep.from", Kind::text},          {"sweep.to", Kind::text},           {"sweep.steps", Kind::integer},
        {"sweep.spacing", Kind::text},
    };
    return s;
}

inline Kind sweep_kind(const std::string& parameter) {
    if (parameter == "sigma" || parameter == "xi" || parameter == "x0") return Kind::length;
    if (parameter == "kappa") return Kind::kappa;
    if (parameter == "sqrt_v_max") return Kind::field;
    if (parameter == "alpha") return Kind::number;
    throw ParseError("sweep.parameter", "unknown sweep parameter '" + parameter + "'");
}

inline DesignInput with_parameter(DesignInput in, const std::string& parameter, double value) {
    const auto& r = in.rough;
    if (parameter == "sigma") in.rough = EdgeRoughness(value, r.xi(), r.alpha());
    else if (parameter == "xi") in.rough = EdgeRoughness(r.sigma(), value, r.alpha());
    else if (parameter == "alpha") in.rough = EdgeRoughness(r.sigma(), r.xi(), value);
    else if (parameter == "x0") in.x0 = units::Length{value};
    else if (parameter == "kappa") in.kappa = units::HeatFlowConstant{value};
    else if (parameter == "sqrt_v_max") in.v_max = units::FieldVariance{value * value};
    else throw ParseError("sweep.parameter", "unknown sweep parameter '" + parameter + "'");
    return in;
}

inline DesignConfig load_design_config(std::istream& is) {
    const auto cfg = Config::parse(is, design_schema());

    const double alpha = cfg.has("roughness.alpha") ? parse_quantity("roughness.alpha", cfg.raw("roughness.alpha"), Kind::number) : 0.5;
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ParseError("roughness.alpha", "must lie in (0, 1]");
    const double sigma = cfg.positive("roughness.sigma", Kind::length);
    const EdgeRoughness rough(sigma, cfg.positive("roughness.xi", Kind::length), alpha);

    AtomSpecies atom = AtomSpecies::rb87();
    const std::string species = cfg.text_or("atom.species", "rb87");
    if (species == "custom") {
        atom.label = "custom";
        atom.mass = units::Mass{cfg.positive("atom.mass_u", Kind::number) * constants::atomic_mass_unit.value};
        atom.mu_z = units::MagneticMoment{cfg.positive("atom.mu_z_bohr", Kind::number) * constants::bohr_magneton.value};
    } else if (species != "rb87") {
        throw ParseError("atom.species", "expected rb87 or custom, got '" + species + "'");
    } else if (cfg.has("atom.mass_u") || cfg.has("atom.mu_z_bohr")) {
        throw ParseError("atom.species", "mass_u and mu_z_bohr require species = custom");
    }

    const double sqrt_v = cfg.positive("trap.sqrt_v_max", Kind::field);
    DesignConfig out{DesignInput{rough, units::Length{cfg.positive("wire.thickness", Kind::length)},
                                 units::HeatFlowConstant{cfg.positive("wire.kappa", Kind::kappa)},
                                 units::FieldVariance{sqrt_v * sqrt_v},
                                 units::MagneticField{cfg.positive("trap.bias_z", Kind::field)}, atom},
                     std::nullopt, std::nullopt};

    const std::string mode = cfg.text_or("design.smallxi", "computed");
    if (mode == "rounded") {
        out.smallxi = rounded_smallxi_constant;
    } else if (mode != "computed") {
        out.smallxi = parse_positive("design.smallxi", mode, Kind::number);
    }

    if (cfg.has("sweep.parameter")) {
        Sweep sw;
        sw.parameter = cfg.raw("sweep.parameter");
        const Kind kind = sweep_kind(sw.parameter);
        sw.from = parse_positive("sweep.from", cfg.raw("sweep.from"), kind);
        sw.to = parse_positive("sweep.to", cfg.raw("sweep.to"), kind);
        const auto steps = cfg.integer("sweep.steps");
        if (steps < 1 || steps > 100000) throw ParseError("sweep.steps", "must lie in [1, 100000]");
        sw.steps = static_cast<int>(steps);
        const std::string spacing = cfg.text_or("sweep.spacing", "linear");
        if (spacing == "log") sw.spacing = SweepSpacing::log;
        else if (spacing != "linear") throw ParseError("sweep.spacing", "expected linear or log");
        if (sw.parameter == "alpha" && !(sw.to <= 1.0 && sw.from <= 1.0)) throw ParseError("sweep.to", "alpha must lie in (0, 1]");
        out.sweep = sw;
    } else {
        for (const char* k : {"sweep.from", "sweep.to", "sweep.steps", "sweep.spacing"}) {
            if (cfg.has(k)) throw ParseError(k, "sweep block needs sweep.parameter");
        }
    }
    return out;
}

} // namespace wirenoise::config
