#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wirenoise/errors.hpp"

namespace wirenoise {

/// A named axis: quantity name plus unit string ("1" for dimensionless).
struct Axis {
    std::string name;
    std::string unit = "1";
};

/// A sampled function y(x) on a strictly increasing grid. Carrier for every
/// figure dataset and spectrum the library produces.
class SampledCurve {
public:
    SampledCurve() = default;

    SampledCurve(std::string label, Axis x_axis, Axis y_axis, std::vector<double> x, std::vector<double> y)
        : label_(std::move(label)), x_axis_(std::move(x_axis)), y_axis_(std::move(y_axis)),
          x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size()) {
            throw ShapeError("SampledCurve '" + label_ + "': x and y lengths differ");
        }
        for (std::size_t i = 1; i < x_.size(); ++i) {
            if (!(x_[i] > x_[i - 1])) {
                throw ShapeError("SampledCurve '" + label_ + "': x grid must be strictly increasing");
            }
        }
    }

    const std::string& label() const noexcept { return label_; }
    const Axis& x_axis() const noexcept { return x_axis_; }
    const Axis& y_axis() const noexcept { return y_axis_; }
    const std::vector<double>& x() const noexcept { return x_; }
    const std::vector<double>& y() const noexcept { return y_; }
    std::size_t size() const noexcept { return x_.size(); }

    /// Free-form provenance entries written as `# key = value` header lines.
    std::map<std::string, std::string>& metadata() noexcept { return meta_; }
    const std::map<std::string, std::string>& metadata() const noexcept { return meta_; }

    /// Index of the largest y value.
    std::size_t argmax() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < y_.size(); ++i) {
            if (y_[i] > y_[best]) best = i;
        }
        return best;
    }

private:
    std::string label_;
    Axis x_axis_;
    Axis y_axis_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::map<std::string, std::string> meta_;
};

/// Shortest decimal form that round-trips a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Write a curve as CSV: `#` comment header (label, axes, metadata), a column
/// header line `x_name[x_unit],y_name[y_unit]`, then one row per sample.
inline void write_csv(std::ostream& os, const SampledCurve& c) {
    os << "# curve = " << c.label() << '\n';
    os << "# x = " << c.x_axis().name << " [" << c.x_axis().unit << "]\n";
    os << "# y = " << c.y_axis().name << " [" << c.y_axis().unit << "]\n";
    for (const auto& [k, v] : c.metadata()) os << "# " << k << " = " << v << '\n';
    os << c.x_axis().name << ',' << c.y_axis().name << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << format_double(c.x()[i]) << ',' << format_double(c.y()[i]) << '\n';
    }
}

/// Logarithmically spaced grid of n points from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.back() = hi;
    return g;
}

/// Linearly spaced grid of n points from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

} // namespace wirenoise
