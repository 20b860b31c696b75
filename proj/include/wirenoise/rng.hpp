#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Portable random streams. std::mt19937_64 is fully specified by the
// standard; the distributions in <random> are not, so the uniform and normal
// transforms are fixed here:
//   uniform  u = (x >> 11) * 2^-53            in [0, 1)
//   normal   Box-Muller on (1 - u1, u2), both outputs used in order.
// A given seed therefore yields the same samples on every platform.
namespace wirenoise {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace wirenoise
