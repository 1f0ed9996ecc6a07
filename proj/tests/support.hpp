#pragma once

// Shared helpers for the unit and acceptance suites: seeded random states,
// schedules and paths, plus the small independent oracles the tests are
// checked against.

#include <cmath>
#include <vector>

#include "rollgeo/rollgeo.hpp"

namespace rollgeo::testing {

inline Vec3 random_tangent(Rng& rng, const Vec3& at) {
    for (;;) {
        Vec3 t = rng.unit_vector();
        t -= t.dot(at) * at;
        const double n = t.norm();
        if (n > 0.2) {
            return t / n;
        }
    }
}

inline RawState random_state(Rng& rng) {
    RawState s;
    s.u = rng.unit_vector();
    s.v = rng.unit_vector();
    s.a = random_tangent(rng, s.u);
    s.b = random_tangent(rng, s.v);
    return s;
}

/// Random state with both contacts in the open upper hemisphere (inside the
/// chart neighborhood).
inline RawState random_state_near_base(Rng& rng, double min_z = 0.5) {
    RawState s = random_state(rng);
    while (s.u.z() < min_z || std::abs(s.u.x()) > 0.95) s.u = rng.unit_vector();
    while (s.v.z() < min_z) s.v = rng.unit_vector();
    s.a = random_tangent(rng, s.u);
    s.b = random_tangent(rng, s.v);
    return s;
}

inline ControlSchedule random_schedule(Rng& rng, int segments, double lo, double hi) {
    std::vector<ControlSegment> segs;
    segs.reserve(static_cast<std::size_t>(segments));
    for (int i = 0; i < segments; ++i) {
        segs.push_back(ControlSegment{rng.uniform(lo, hi), rng.angle()});
    }
    return ControlSchedule(std::move(segs));
}

/// Generic multi-segment path transported so its final state is the base
/// state; the family used for endpoint-map experiments.
inline HorizontalPath random_path_ending_at_base(Rng& rng, double r, int segments = 8,
                                                 double lo = 0.8, double hi = 1.3,
                                                 double step = 1e-3) {
    const HorizontalPath p = roll(base_state(), RadiusRatio(r), random_schedule(rng, segments, lo, hi), step);
    return transport_to_base(p);
}

/// Independent oracle for the gauge-orbit claim: grid search plus local
/// refinement for the angle carrying s1 onto s2, never using gauge_shift's
/// own inverse structure.
inline double orbit_search_distance(const RawState& s1, const RawState& s2) {
    const auto distance = [&](double theta) {
        return state_distance(gauge_shift(s1, theta), s2);
    };
    double best_theta = 0.0;
    double best = distance(0.0);
    for (int i = 1; i < 4096; ++i) {
        const double theta = 2.0 * M_PI * static_cast<double>(i) / 4096.0;
        const double d = distance(theta);
        if (d < best) {
            best = d;
            best_theta = theta;
        }
    }
    double lo = best_theta - 2.0 * M_PI / 4096.0;
    double hi = best_theta + 2.0 * M_PI / 4096.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (distance(m1) < distance(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return distance(0.5 * (lo + hi));
}

/// Five equally spaced interior break times for a path of the given duration.
inline std::array<double, 5> spread_times(double duration) {
    std::array<double, 5> t{};
    for (int i = 0; i < 5; ++i) {
        t[static_cast<std::size_t>(i)] = duration * static_cast<double>(i + 1) / 6.0;
    }
    return t;
}

}  // namespace rollgeo::testing
