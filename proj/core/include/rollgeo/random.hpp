#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rollgeo/geometry.hpp"

namespace rollgeo {

/// Deterministic random source. Draws are derived from the raw mt19937_64
/// stream directly (no std distributions) so identical seeds give identical
/// sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double angle() { return uniform(0.0, 2.0 * M_PI); }

    Vec3 unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = angle();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return Vec3(s * std::cos(phi), s * std::sin(phi), z);
    }

    Vec5 unit_vec5() {
        // Gaussian directions via Box-Muller on the portable uniform stream.
        Vec5 k;
        for (int i = 0; i < 5; ++i) {
            double u1 = uniform01();
            while (u1 <= 0.0) u1 = uniform01();
            const double u2 = uniform01();
            k[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
        return k.normalized();
    }

private:
    std::mt19937_64 engine_;
};

/// Five distinct values drawn uniformly without replacement from `pool`,
/// sorted, rejecting tuples with spacing below min_separation.
std::vector<double> sample_time_tuple(Rng& rng, const std::vector<double>& pool,
                                      double min_separation);

}  // namespace rollgeo
