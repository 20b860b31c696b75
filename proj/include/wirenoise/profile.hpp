#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wirenoise/curve.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/fft.hpp"
#include "wirenoise/parallel.hpp"
#include "wirenoise/rng.hpp"

// Random self-affine profiles with a prescribed autocorrelation, and the
// estimators that recover (sigma, C, G, alpha, xi) from sampled data.
namespace wirenoise {

enum class SynthesisMethod { circulant_embedding, spectral_filter, combined, measured };

inline std::string to_string(SynthesisMethod m) {
    switch (m) {
    case SynthesisMethod::circulant_embedding: return "circulant_embedding";
    case SynthesisMethod::spectral_filter: return "spectral_filter";
    case SynthesisMethod::combined: return "combined";
    case SynthesisMethod::measured: return "measured";
    }
    return "unknown";
}

inline SynthesisMethod synthesis_method_from_string(const std::string& s) {
    if (s == "circulant_embedding") return SynthesisMethod::circulant_embedding;
    if (s == "spectral_filter") return SynthesisMethod::spectral_filter;
    if (s == "combined") return SynthesisMethod::combined;
    if (s == "measured") return SynthesisMethod::measured;
    throw ParseError("method", "unknown synthesis method '" + s + "'");
}

/// Sampled centre-line displacement dy(z) [m] on a uniform grid z_i = i dz.
class EdgeProfile {
public:
    EdgeProfile(double dz, std::vector<double> values, std::uint64_t seed = 0,
                std::optional<EdgeRoughness> target = std::nullopt,
                SynthesisMethod method = SynthesisMethod::measured)
        : dz_(dz), values_(std::move(values)), seed_(seed), target_(target), method_(method) {
        if (!(dz > 0.0) || !std::isfinite(dz)) throw DomainError("EdgeProfile: dz must be positive");
        if (values_.size() < 2) throw ShapeError("EdgeProfile: need at least 2 samples");
    }

    double dz() const noexcept { return dz_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double length() const noexcept { return dz_ * static_cast<double>(values_.size()); }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::optional<EdgeRoughness>& target() const noexcept { return target_; }
    SynthesisMethod method() const noexcept { return method_; }

    double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(values_.size());
    }

    double rms() const {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return std::sqrt(s / static_cast<double>(values_.size()));
    }

private:
    double dz_;
    std::vector<double> values_;
    std::uint64_t seed_;
    std::optional<EdgeRoughness> target_;
    SynthesisMethod method_;
};

struct SynthesisOptions {
    // Force the spectral-filtering path (normally only a fallback).
    bool force_spectral = false;
    // Negative circulant eigenvalues down to -tol * max are clipped to zero;
    // anything more negative counts as an embedding failure.
    double negative_eigen_tol = 1e-6;
};

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Circulant embedding on m = 2n points. Returns false if the embedding is
// not (numerically) non-negative definite.
inline bool circulant_embedding(const EdgeRoughness& rough, std::size_t n, double dz, Rng& rng,
                                double tol, std::vector<double>& out) {
    const std::size_t m = 2 * n;
    fft::cvec row(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lag = std::min(j, m - j);
        row[j] = autocorrelation(rough, static_cast<double>(lag) * dz);
    }
    fft::dft(row);
    double lmax = 0.0, lmin = 0.0;
    for (const auto& c : row) {
        lmax = std::max(lmax, c.real());
        lmin = std::min(lmin, c.real());
    }
    if (!(lmax > 0.0) || lmin < -tol * lmax) return false;

    fft::cvec w(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double lam = std::max(row[k].real(), 0.0);
        const double a = rng.normal();
        const double b = rng.normal();
        w[k] = std::sqrt(lam / static_cast<double>(m)) * std::complex<double>(a, b);
    }
    fft::dft(w);
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = w[j].real();
    return true;
}

// Spectral filtering: independent Gaussian Fourier amplitudes with variance
// P(q_k) dq on the periodic grid q_k = 2 pi k / (n dz).
inline bool spectral_filter(const EdgeRoughness& rough, std::size_t n, double dz, Rng& rng,
                            std::vector<double>& out) {
    const double dq = 2.0 * std::numbers::pi / (static_cast<double>(n) * dz);
    fft::cvec spec(n / 2 + 1);
    spec[0] = std::sqrt(0.5 * model_spectrum(rough, 0.0) * dq) * rng.normal();
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double s = std::sqrt(model_spectrum(rough, static_cast<double>(k) * dq) * dq);
        const double a = rng.normal();
        const double b = rng.normal();
        spec[k] = 0.5 * s * std::complex<double>(a, -b);
    }
    spec[n / 2] = std::sqrt(model_spectrum(rough, static_cast<double>(n / 2) * dq) * dq) * rng.normal();
    out = fft::irfft(spec, n);
    return std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); });
}

} // namespace detail

/// Gaussian random profile whose ensemble autocorrelation is
/// sigma^2 exp[-(r/xi)^(2 alpha)]. Deterministic in `seed`.
inline EdgeProfile synthesize(const EdgeRoughness& rough, std::size_t n, double dz, std::uint64_t seed,
                              const SynthesisOptions& opt = {}) {
    if (n < 256 || !detail::is_power_of_two(n)) {
        throw DomainError("synthesize: n must be a power of two >= 256, got " + std::to_string(n));
    }
    if (!(dz > 0.0)) throw DomainError("synthesize: dz must be positive");
    if (static_cast<double>(n) * dz < 8.0 * rough.xi()) {
        throw DomainError("synthesize: profile must span at least 8 correlation lengths");
    }
    std::vector<double> values;
    if (!opt.force_spectral) {
        Rng rng(seed);
        if (detail::circulant_embedding(rough, n, dz, rng, opt.negative_eigen_tol, values)) {
            return EdgeProfile(dz, std::move(values), seed, rough, SynthesisMethod::circulant_embedding);
        }
    }
    Rng rng(seed);
    if (detail::spectral_filter(rough, n, dz, rng, values)) {
        return EdgeProfile(dz, std::move(values), seed, rough, SynthesisMethod::spectral_filter);
    }
    throw EmbeddingError("synthesize: neither circulant embedding nor spectral filtering produced a valid profile");
}

/// Ensemble of `count` profiles with seeds seed, seed+1, ...
inline std::vector<EdgeProfile> synthesize_ensemble(const EdgeRoughness& rough, std::size_t n, double dz,
                                                    std::uint64_t seed, std::size_t count,
                                                    const SynthesisOptions& opt = {}) {
    std::vector<std::optional<EdgeProfile>> slots(count);
    parallel_for(count, [&](std::size_t i) { slots[i].emplace(synthesize(rough, n, dz, seed + i, opt)); });
    std::vector<EdgeProfile> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Centre line from the two edges: dy = (f_L + f_R) / 2.
inline EdgeProfile combine_edges(const EdgeProfile& left, const EdgeProfile& right) {
    if (left.size() != right.size()) throw ShapeError("combine_edges: profiles differ in length");
    if (left.dz() != right.dz()) throw ShapeError("combine_edges: profiles differ in spacing");
    std::vector<double> v(left.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (left.values()[i] + right.values()[i]);
    return EdgeProfile(left.dz(), std::move(v), left.seed(), std::nullopt, SynthesisMethod::combined);
}

/// Sample roughness statistics on lags r_k = k dz, k = 0..K.
struct ProfileStatistics {
    double sigma_hat = 0.0;
    SampledCurve c_hat;  // C^(r) [m^2]
    SampledCurve g_hat;  // G^(r) [m]
};

/// sigma^2 uses the 1/(n-1) sample variance; G^2(r_k) is the mean squared
/// increment over the n-k available pairs (unbiased for G^2), and
/// C^ = sigma^2 - G^2/2 so that G^2 = 2 sigma^2 - 2 C^ holds by construction.
inline ProfileStatistics estimate_statistics(const EdgeProfile& profile, double max_lag) {
    const std::size_t n = profile.size();
    const double dz = profile.dz();
    if (max_lag < 0.0) throw DomainError("estimate_statistics: max_lag must be non-negative");
    if (max_lag > static_cast<double>(n / 4) * dz * (1.0 + 1e-12)) {
        throw DomainError("estimate_statistics: max_lag must not exceed n/4 samples");
    }
    const auto kmax = static_cast<std::size_t>(std::floor(max_lag / dz * (1.0 + 1e-12)));
    const auto& v = profile.values();

    const double mean = profile.mean();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(n - 1);

    // Lag products sum_i v_i v_{i+k} through a zero-padded FFT.
    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<double> padded(m, 0.0);
    std::copy(v.begin(), v.end(), padded.begin());
    auto spec = fft::rfft(padded);
    for (auto& c : spec) c = std::norm(c);
    const auto acf = fft::irfft(spec, m);

    // Prefix sums of squares for the two end-trimmed sums.
    std::vector<double> sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) sq[i + 1] = sq[i] + v[i] * v[i];

    std::vector<double> lag(kmax + 1), g(kmax + 1), c(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) {
        lag[k] = static_cast<double>(k) * dz;
        double g2 = 0.0;
        if (k > 0) {
            const double cross = acf[k] / static_cast<double>(m);
            const double head = sq[n - k];         // sum_{i<n-k} v_i^2
            const double tail = sq[n] - sq[k];     // sum_{i>=k} v_i^2
            g2 = std::max(0.0, (head + tail - 2.0 * cross) / static_cast<double>(n - k));
        }
        g[k] = std::sqrt(g2);
        c[k] = var - 0.5 * g[k] * g[k];
    }
    ProfileStatistics out;
    out.sigma_hat = std::sqrt(var);
    out.g_hat = SampledCurve("G_hat", {"r", "m"}, {"G", "m"}, lag, std::move(g));
    out.c_hat = SampledCurve("C_hat", {"r", "m"}, {"C", "m^2"}, std::move(lag), std::move(c));
    return out;
}

struct HurstFit {
    double alpha_hat = 0.0;
    double xi_hat = 0.0;
    double intercept = 0.0;     // ln G at r = 1 m from the fit line
    double residual_rms = 0.0;  // rms of ln G residuals about the line
    std::size_t points = 0;
};

/// Minimum number of lags in the log-log fit window.
inline constexpr std::size_t min_hurst_points = 4;

/// alpha^ from the least-squares slope of ln G^ against ln r over
/// r in [dz, xi^/2]; xi^ is the smallest lag where G^ reaches
/// (1 - 1/e) sqrt(2) sigma^.
inline HurstFit fit_hurst(const EdgeProfile& profile) {
    const std::size_t n = profile.size();
    const double dz = profile.dz();
    if (const auto& t = profile.target()) {
        if (t->xi() / 2.0 <= 8.0 * dz) {
            throw InsufficientRangeError("fit_hurst: fewer than 8 lags below xi/2; refine dz");
        }
    }
    if (n < 16) throw InsufficientRangeError("fit_hurst: profile too short");
    const auto stats = estimate_statistics(profile, static_cast<double>(n / 4) * dz);
    const double level = (1.0 - 1.0 / std::numbers::e) * std::numbers::sqrt2 * stats.sigma_hat;
    const auto& g = stats.g_hat.y();
    const auto& r = stats.g_hat.x();
    std::size_t cross = 0;
    for (std::size_t k = 1; k < g.size(); ++k) {
        if (g[k] >= level) {
            cross = k;
            break;
        }
    }
    if (cross == 0) throw InsufficientRangeError("fit_hurst: G never reaches its saturation level within n/4 lags");

    HurstFit fit;
    fit.xi_hat = r[cross];
    std::vector<double> lx, ly;
    for (std::size_t k = 1; k < g.size() && r[k] <= 0.5 * fit.xi_hat * (1.0 + 1e-12); ++k) {
        if (g[k] > 0.0) {
            lx.push_back(std::log(r[k]));
            ly.push_back(std::log(g[k]));
        }
    }
    fit.points = lx.size();
    if (fit.points < min_hurst_points) {
        throw InsufficientRangeError("fit_hurst: only " + std::to_string(fit.points) +
                                     " lags in [dz, xi/2]; need at least " + std::to_string(min_hurst_points));
    }
    const double np = static_cast<double>(fit.points);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= np;
    my /= np;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.alpha_hat = sxy / sxx;
    fit.intercept = my - fit.alpha_hat * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (fit.intercept + fit.alpha_hat * lx[i]);
        rss += e * e;
    }
    fit.residual_rms = std::sqrt(rss / np);
    return fit;
}

/// Two-column CSV (z_m, dy_m) with a `#` header carrying dz, seed, method
/// and, when known, the target sigma, xi, alpha.
inline void write_profile_csv(std::ostream& os, const EdgeProfile& p) {
    os << "# dz = " << format_double(p.dz()) << '\n';
    os << "# seed = " << p.seed() << '\n';
    os << "# method = " << to_string(p.method()) << '\n';
    if (const auto& t = p.target()) {
        os << "# sigma = " << format_double(t->sigma()) << '\n';
        os << "# xi = " << format_double(t->xi()) << '\n';
        os << "# alpha = " << format_double(t->alpha()) << '\n';
    }
    os << "z_m,dy_m\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        os << format_double(static_cast<double>(i) * p.dz()) << ',' << format_double(p.values()[i]) << '\n';
    }
}

inline EdgeProfile read_profile_csv(std::istream& is) {
    std::optional<double> dz, sigma, xi, alpha;
    std::uint64_t seed = 0;
    SynthesisMethod method = SynthesisMethod::measured;
    std::vector<double> z, v;
    std::string line;
    std::size_t lineno = 0;
    auto number = [&](const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(text, &pos);
            if (text.find_first_not_of(" \t\r", pos) != std::string::npos) throw std::invalid_argument(text);
            return x;
        } catch (const std::exception&) {
            throw ParseError(key, "line " + std::to_string(lineno) + ": not a number: '" + text + "'");
        }
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t#");
                const auto b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key == "dz") dz = number(key, val);
            else if (key == "seed") seed = static_cast<std::uint64_t>(std::stoull(val));
            else if (key == "method") method = synthesis_method_from_string(val);
            else if (key == "sigma") sigma = number(key, val);
            else if (key == "xi") xi = number(key, val);
            else if (key == "alpha") alpha = number(key, val);
            continue;
        }
        if (line.rfind("z_m", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("row", "line " + std::to_string(lineno) + ": expected two comma-separated columns");
        }
        z.push_back(number("z_m", line.substr(0, comma)));
        v.push_back(number("dy_m", line.substr(comma + 1)));
    }
    if (v.size() < 2) throw ParseError("row", "profile needs at least 2 samples");
    if (!dz) dz = z[1] - z[0];
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (std::abs(z[i] - z[i - 1] - *dz) > 1e-6 * *dz) {
            throw ParseError("z_m", "samples are not uniformly spaced at dz (row " + std::to_string(i) + ")");
        }
    }
    std::optional<EdgeRoughness> target;
    if (sigma && xi && alpha) target = EdgeRoughness(*sigma, *xi, *alpha);
    return EdgeProfile(*dz, std::move(v), seed, target, method);
}

} // namespace wirenoise
