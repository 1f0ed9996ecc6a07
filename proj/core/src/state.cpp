#include "rollgeo/state.hpp"

#include <algorithm>
#include <cmath>

namespace rollgeo {

double state_defect(const RawState& s) noexcept {
    double d = std::abs(s.u.norm() - 1.0);
    d = std::max(d, std::abs(s.v.norm() - 1.0));
    d = std::max(d, std::abs(s.a.norm() - 1.0));
    d = std::max(d, std::abs(s.b.norm() - 1.0));
    d = std::max(d, std::abs(s.u.dot(s.a)));
    d = std::max(d, std::abs(s.v.dot(s.b)));
    return d;
}

void validate_state(const RawState& s, double tol) {
    if (!s.u.allFinite() || !s.v.allFinite() || !s.a.allFinite() || !s.b.allFinite()) {
        throw validation_error("RawState: components must be finite");
    }
    const double d = state_defect(s);
    if (d > tol) {
        throw validation_error("RawState: invariant violation " + std::to_string(d) +
                               " exceeds tolerance " + std::to_string(tol));
    }
}

double state_distance(const RawState& s1, const RawState& s2) noexcept {
    double d = (s1.u - s2.u).lpNorm<Eigen::Infinity>();
    d = std::max(d, (s1.v - s2.v).lpNorm<Eigen::Infinity>());
    d = std::max(d, (s1.a - s2.a).lpNorm<Eigen::Infinity>());
    d = std::max(d, (s1.b - s2.b).lpNorm<Eigen::Infinity>());
    return d;
}

namespace {

Vec3 checked_direction(const Vec3& v, double tol, const char* name) {
    if (!v.allFinite()) {
        throw validation_error(std::string("make_state: ") + name + " must be finite");
    }
    const double n = v.norm();
    if (std::abs(n - 1.0) > tol) {
        throw validation_error(std::string("make_state: |") + name + "| deviates from 1 by " +
                               std::to_string(std::abs(n - 1.0)) + " > tol");
    }
    return v / n;
}

Vec3 project_tangent(const Vec3& marker, const Vec3& at, double tol, const char* name) {
    const double dot = marker.dot(at);
    if (std::abs(dot) > tol) {
        throw validation_error(std::string("make_state: |") + name +
                               "| tangency defect " + std::to_string(std::abs(dot)) + " > tol");
    }
    Vec3 t = marker - dot * at;
    const double n = t.norm();
    if (n < 0.5) {
        throw validation_error(std::string("make_state: ") + name +
                               " is degenerate after projection");
    }
    return t / n;
}

}  // namespace

RawState make_state(const Vec3& u, const Vec3& v, const Vec3& a, const Vec3& b, double tol) {
    RawState s;
    s.u = checked_direction(u, tol, "u");
    s.v = checked_direction(v, tol, "v");
    const Vec3 an = checked_direction(a, tol, "a");
    const Vec3 bn = checked_direction(b, tol, "b");
    s.a = project_tangent(an, s.u, tol, "u.a");
    s.b = project_tangent(bn, s.v, tol, "v.b");
    return s;
}

RawState gauge_shift(const RawState& s, double theta) noexcept {
    if (theta == 0.0) {
        return s;
    }
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    // Both markers stay tangent, so the rotations reduce to in-plane turns.
    RawState out = s;
    out.a = c * s.a + sn * s.u.cross(s.a);
    out.b = c * s.b - sn * s.v.cross(s.b);
    return out;
}

bool equivalent(const RawState& s1, const RawState& s2, double tol) noexcept {
    if ((s1.u - s2.u).lpNorm<Eigen::Infinity>() > tol) return false;
    if ((s1.v - s2.v).lpNorm<Eigen::Infinity>() > tol) return false;
    const double ca = s1.a.dot(s2.a);
    const double cb = s1.b.dot(s2.b);
    if (std::abs(ca - cb) > tol) return false;
    const double sa = s1.a.dot(s1.u.cross(s2.a));
    const double sb = s1.b.dot(s1.v.cross(s2.b));
    return std::abs(sa + sb) <= tol;
}

RawState act(const RotationSequence& g1, const RotationSequence& g2, const RawState& s) noexcept {
    return RawState{g1.apply(s.u), g2.apply(s.v), g1.apply(s.a), g2.apply(s.b)};
}

RawState canonical_gauge(const RawState& s) {
    Vec3 p = e1() - e1().dot(s.u) * s.u;
    const double pn = p.norm();
    if (pn <= 1e-8) {
        throw numerical_error("canonical_gauge: u is parallel to e1 (chart-boundary input)");
    }
    p /= pn;
    // <a, p> is maximized at a = p; realize it as a gauge shift so b compensates.
    const double theta = std::atan2(s.u.dot(s.a.cross(p)), s.a.dot(p));
    return gauge_shift(s, theta);
}

double chart_w5(const RawState& s) noexcept {
    return (s.a.x() * s.u.z() - s.a.z() * s.u.x()) * s.b.y() +
           (s.b.x() * s.u.z() - s.b.z() * s.u.y()) * s.a.y();
}

ChartCoords chart_coords(const RawState& s) {
    if (!(s.u.z() > 0.0) || !(s.v.z() > 0.0)) {
        throw numerical_error("chart_coords: state is outside the chart neighborhood (u3, v3 must be > 0)");
    }
    const RawState c = canonical_gauge(s);
    ChartCoords out;
    out.w << s.u.x(), s.u.y(), s.v.x(), s.v.y(), chart_w5(c);
    return out;
}

}  // namespace rollgeo
