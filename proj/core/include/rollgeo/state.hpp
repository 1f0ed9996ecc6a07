#pragma once

#include <array>

#include "rollgeo/geometry.hpp"

namespace rollgeo {

/// One gauge representative of a rolling configuration:
///   u — contact point on the unit sphere M1
///   v — contact direction on M2 (the contact point itself is r*v)
///   a — unit tangent marker at u (u . a = 0)
///   b — unit tangent marker at v (v . b = 0)
struct RawState {
    Vec3 u;
    Vec3 v;
    Vec3 a;
    Vec3 b;
};

/// Both spheres touching at their north poles, tangent markers along +x.
inline RawState base_state() noexcept {
    return RawState{e3(), e3(), e1(), e1()};
}

/// Largest invariant violation of s: norm defects of u, v, a, b and the
/// tangency defects |u.a|, |v.b|.
double state_defect(const RawState& s) noexcept;

/// Throws validation_error when state_defect(s) > tol or a component is not finite.
void validate_state(const RawState& s, double tol = 1e-10);

/// Sup-norm distance over the 12 components.
double state_distance(const RawState& s1, const RawState& s2) noexcept;

/// Validation boundary: renormalizes u and v, projects a and b onto the
/// tangent planes and renormalizes, provided the pre-projection violations
/// are at most tol. Rejects anything worse (corrupted data, not roundoff).
RawState make_state(const Vec3& u, const Vec3& v, const Vec3& a, const Vec3& b,
                    double tol = 1e-12);

/// The gauge motion (a, b) -> (R_u^theta a, R_v^{-theta} b); u and v are fixed.
RawState gauge_shift(const RawState& s, double theta) noexcept;

/// Whether s1 and s2 describe the same configuration: equal contact data and
///   <a1, a2> = <b1, b2>,   <a1, u x a2> = -<b1, v x b2>
/// within tol.
bool equivalent(const RawState& s1, const RawState& s2, double tol = 1e-9) noexcept;

/// The product-symmetry action (u, v, a, b) -> (g1 u, g2 v, g1 a, g2 b).
RawState act(const RotationSequence& g1, const RotationSequence& g2, const RawState& s) noexcept;

/// The unique gauge representative whose a-marker maximizes <a, p>, p being
/// the unit projection of e1 onto the tangent plane at u. Degenerate (throws
/// numerical_error) when u is parallel to e1, which signals chart-boundary input.
RawState canonical_gauge(const RawState& s);

/// Chart coordinates (w1..w5) of a state near the base state.
struct ChartCoords {
    Vec5 w;
    double operator[](int i) const { return w[i]; }
};

/// The w5 combination evaluated on the representative exactly as given:
///   (a1 u3 - a3 u1) b2 + (b1 u3 - b3 u2) a2.
/// Not gauge-invariant away from the base contact; chart_coords therefore
/// evaluates it on canonical_gauge(s).
double chart_w5(const RawState& s) noexcept;

/// w = (u1, u2, v1, v2, w5 of the canonical representative). Requires
/// u3 > 0 and v3 > 0 (the chart neighborhood); throws numerical_error outside.
ChartCoords chart_coords(const RawState& s);

}  // namespace rollgeo
