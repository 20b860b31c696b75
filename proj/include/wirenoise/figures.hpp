#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wirenoise/curve.hpp"
#include "wirenoise/design.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/parallel.hpp"
#include "wirenoise/profile.hpp"
#include "wirenoise/trap_noise.hpp"
#include "wirenoise/transfer.hpp"
#include "wirenoise/version.hpp"

// Datasets behind the published figures:
//   2  P~ versus q xi for alpha = 1/4 and 1, with 2 xi long profile samples
//   3  f~^2 versus qd for d/y0 = 10, 2, 0.6
//   4  S~ = P~ f~^2 versus qd, alpha = 1, d = 2 y0, xi/d = 33, 10, 1, 0.01
//   5  as 4 for alpha = 1 and 1/4
//   6  V~ versus d/y0 for xi/d = 1, 20, 0.01 and alpha = 1, 0.25
//   7  V~ versus d/xi at d = y0 for alpha = 1, 1/2, 1/4, with 0.274 xi/d
// Each figure has one varied parameter; `extra` appends curves for further
// values of it.
namespace wirenoise::figures {

struct Options {
    std::vector<double> extra;
    std::size_t points = 0;  // 0: figure default
    std::uint64_t seed = 1;  // profile samples of figure 2
};

struct Figure {
    int id = 0;
    std::string title;
    std::string varied;  // name of the parameter `extra` extends
    std::map<std::string, std::string> parameters;
    std::vector<double> extra;
    std::vector<SampledCurve> curves;
};

inline constexpr int first_id = 2;
inline constexpr int last_id = 7;

namespace detail {

// Shortest round-trip form, so 0.6 labels as "0.6".
inline std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::vector<double> with_extra(std::vector<double> base, const std::vector<double>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

template <class F>
std::vector<double> evaluate(const std::vector<double>& x, F&& f) {
    std::vector<double> y(x.size());
    parallel_for(x.size(), [&](std::size_t i) { y[i] = f(x[i]); });
    return y;
}

inline void check_alpha(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("figure override: alpha must lie in (0, 1]");
}

inline void check_d_over_y0(double r) {
    if (!(r > 0.5)) throw DomainError("figure override: d/y0 must exceed 1/2");
}

inline void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string("figure override: ") + what + " must be positive");
}

inline Figure spectrum(const Options& opt) {
    Figure fig{2, "Roughness spectrum P~ versus q xi", "alpha", {}, opt.extra, {}};
    const auto x = log_grid(1e-2, 1e2, opt.points ? opt.points : 201);
    for (double a : with_extra({0.25, 1.0}, opt.extra)) {
        check_alpha(a);
        SampledCurve c("P_alpha_" + num(a), {"q_xi"}, {"P_tilde"}, x,
                       evaluate(x, [a](double k) { return model_spectrum_dimensionless(a, k); }));
        c.metadata()["alpha"] = num(a);
        fig.curves.push_back(std::move(c));
    }
    // profile samples over 2 xi, in units of xi and sigma
    constexpr std::size_t per_xi = 100;
    for (double a : with_extra({0.25, 1.0}, opt.extra)) {
        const auto p = synthesize(EdgeRoughness(1.0, 1.0, a), 1024, 1.0 / per_xi, opt.seed);
        std::vector<double> z(2 * per_xi + 1), y(2 * per_xi + 1);
        for (std::size_t i = 0; i < z.size(); ++i) {
            z[i] = static_cast<double>(i) / per_xi;
            y[i] = p.values()[i];
        }
        SampledCurve c("profile_alpha_" + num(a), {"z_over_xi"}, {"dy_over_sigma"}, z, y);
        c.metadata()["alpha"] = num(a);
        c.metadata()["seed"] = std::to_string(opt.seed);
        c.metadata()["method"] = to_string(p.method());
        fig.curves.push_back(std::move(c));
    }
    fig.parameters["seed"] = std::to_string(opt.seed);
    return fig;
}

inline Figure transfer(const Options& opt) {
    Figure fig{3, "Transfer factor f~^2 versus qd", "d_over_y0", {}, opt.extra, {}};
    const auto x = log_grid(1e-3, 20.0, opt.points ? opt.points : 241);
    for (double r : with_extra({10.0, 2.0, 0.6}, opt.extra)) {
        check_d_over_y0(r);
        SampledCurve c("f2_d_over_y0_" + num(r), {"qd"}, {"f_tilde_squared"}, x, evaluate(x, [r](double s) {
                           const double f = ftilde_series(s, r).value;
                           return f * f;
                       }));
        c.metadata()["d_over_y0"] = num(r);
        fig.curves.push_back(std::move(c));
    }
    return fig;
}

inline SampledCurve stilde_curve(const std::vector<double>& x, double r, double xi_over_d, double alpha) {
    SampledCurve c("S_alpha_" + num(alpha) + "_xi_over_d_" + num(xi_over_d), {"qd"}, {"S_tilde"}, x,
                   evaluate(x, [=](double s) { return stilde_reduced(s, r, 1.0 / xi_over_d, alpha); }));
    c.metadata()["alpha"] = num(alpha);
    c.metadata()["d_over_y0"] = num(r);
    c.metadata()["xi_over_d"] = num(xi_over_d);
    return c;
}

inline Figure trap_spectrum(const Options& opt, int id, const std::vector<double>& alphas) {
    Figure fig{id, id == 4 ? "Trap spectrum S~ = P~ f~^2, alpha = 1, d = 2 y0" : "Trap spectrum S~ for two Hurst exponents, d = 2 y0",
               "xi_over_d", {{"d_over_y0", "2"}}, opt.extra, {}};
    const auto x = log_grid(1e-3, 20.0, opt.points ? opt.points : 241);
    for (double a : alphas) {
        for (double xd : with_extra({33.0, 10.0, 1.0, 0.01}, opt.extra)) {
            check_positive(xd, "xi/d");
            fig.curves.push_back(stilde_curve(x, 2.0, xd, a));
        }
    }
    return fig;
}

inline Figure variance_vs_height(const Options& opt) {
    Figure fig{6, "Dimensionless variance V~ versus d/y0", "xi_over_d", {}, opt.extra, {}};
    const auto x = log_grid(0.6, 100.0, opt.points ? opt.points : 61);
    for (double a : {1.0, 0.25}) {
        for (double xd : with_extra({1.0, 20.0, 0.01}, opt.extra)) {
            check_positive(xd, "xi/d");
            SampledCurve c("V_alpha_" + num(a) + "_xi_over_d_" + num(xd), {"d_over_y0"}, {"V_tilde"}, x,
                           evaluate(x, [=](double r) { return vtilde(r, 1.0 / xd, a); }));
            c.metadata()["alpha"] = num(a);
            c.metadata()["xi_over_d"] = num(xd);
            fig.curves.push_back(std::move(c));
        }
    }
    return fig;
}

inline Figure variance_vs_correlation(const Options& opt) {
    Figure fig{7, "Dimensionless variance V~ versus d/xi at d = y0", "alpha", {{"d_over_y0", "1"}}, opt.extra, {}};
    const auto x = log_grid(1e-2, 1e3, opt.points ? opt.points : 61);
    for (double a : with_extra({1.0, 0.5, 0.25}, opt.extra)) {
        check_alpha(a);
        SampledCurve c("V_alpha_" + num(a), {"d_over_xi"}, {"V_tilde"}, x,
                       evaluate(x, [=](double dx) { return vtilde(1.0, dx, a); }));
        c.metadata()["alpha"] = num(a);
        fig.curves.push_back(std::move(c));
    }
    std::vector<double> ref(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ref[i] = rounded_smallxi_constant / x[i];
    SampledCurve c("small_xi_law", {"d_over_xi"}, {"V_tilde"}, x, ref);
    c.metadata()["law"] = "0.274 xi/d, valid for d >> xi";
    fig.curves.push_back(std::move(c));
    return fig;
}

} // namespace detail

inline Figure make_figure(int id, const Options& opt = {}) {
    switch (id) {
        case 2: return detail::spectrum(opt);
        case 3: return detail::transfer(opt);
        case 4: return detail::trap_spectrum(opt, 4, {1.0});
        case 5: return detail::trap_spectrum(opt, 5, {1.0, 0.25});
        case 6: return detail::variance_vs_height(opt);
        case 7: return detail::variance_vs_correlation(opt);
        default: throw DomainError("unknown figure id " + std::to_string(id) + " (expected 2-7)");
    }
}

/// 64-bit FNV-1a hash, used as a file checksum in manifests.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

/// CSV text for one curve, with a version line first.
inline std::string curve_csv(const Figure& fig, const SampledCurve& c) {
    std::ostringstream os;
    os << "# wirenoise " << version << '\n';
    os << "# figure = " << fig.id << '\n';
    for (const auto& [k, v] : fig.parameters) os << "# " << k << " = " << v << '\n';
    write_csv(os, c);
    return os.str();
}

/// Write one CSV per curve and fig<id>_manifest.json into `dir`. Returns the
/// manifest.
inline nlohmann::json write_figure(const Figure& fig, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json files = nlohmann::json::array();
    for (const auto& c : fig.curves) {
        const std::string name = "fig" + std::to_string(fig.id) + "_" + c.label() + ".csv";
        const std::string text = curve_csv(fig, c);
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
        os << text;
        files.push_back({{"file", name}, {"curve", c.label()}, {"rows", c.size()}, {"metadata", c.metadata()},
                         {"fnv1a64", hex64(fnv1a64(text))}});
    }
    nlohmann::json manifest = {
        {"figure", fig.id},
        {"title", fig.title},
        {"version", version},
        {"parameters", fig.parameters},
        {"overrides", {{"parameter", fig.varied}, {"extra", fig.extra}}},
        {"files", files},
    };
    std::ofstream os(dir / ("fig" + std::to_string(fig.id) + "_manifest.json"));
    os << manifest.dump(2) << '\n';
    return manifest;
}

} // namespace wirenoise::figures
