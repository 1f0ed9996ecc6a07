#include "rollgeo/geometry.hpp"

#include <cmath>

namespace rollgeo {

UnitVec3::UnitVec3(const Vec3& v, double tol) : v_(v) {
    if (!v.allFinite()) {
        throw validation_error("UnitVec3: components must be finite");
    }
    if (std::abs(v.norm() - 1.0) > tol) {
        throw validation_error("UnitVec3: |norm - 1| exceeds tolerance");
    }
}

UnitVec3 UnitVec3::normalized(const Vec3& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n < 1e-14) {
        throw validation_error("UnitVec3::normalized: vector too short to define a direction");
    }
    return UnitVec3(Vec3(v / n), unchecked_tag{});
}

Vec3 rotate(const AxisAngle& r, const Vec3& x) noexcept {
    if (r.angle == 0.0) {
        return x;
    }
    const Vec3& k = r.axis.vec();
    const double c = std::cos(r.angle);
    const double s = std::sin(r.angle);
    return x * c + k.cross(x) * s + k * (k.dot(x) * (1.0 - c));
}

Vec3 rotation_generator(const UnitVec3& axis, const Vec3& x) noexcept {
    return axis.vec().cross(x);
}

Vec3 RotationSequence::apply(const Vec3& x) const noexcept {
    Vec3 y = x;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        y = rotate(*it, y);
    }
    return y;
}

RotationSequence RotationSequence::frame_to_base(const UnitVec3& w, const UnitVec3& t) {
    const Vec3& wv = w.vec();
    RotationSequence seq;

    // First factor (applied last): align the image of t with e1 by a rotation
    // about e3. Second factor (applied first): carry w onto e3.
    AxisAngle tilt{UnitVec3(e1(), 1e-9), 0.0};
    const Vec3 axis_raw = wv.cross(e3());
    const double sin_ang = axis_raw.norm();
    const double cos_ang = wv.dot(e3());
    if (sin_ang > 1e-14) {
        tilt = AxisAngle{UnitVec3::normalized(axis_raw), std::atan2(sin_ang, cos_ang)};
    } else if (cos_ang < 0.0) {
        // w == -e3: any half-turn through the equator works; pick the x-axis.
        tilt = AxisAngle{UnitVec3(e1(), 1e-9), M_PI};
    }  // w == e3: identity tilt (angle 0).

    const Vec3 t1 = rotate(tilt, t.vec());
    const AxisAngle swing{UnitVec3(e3(), 1e-9), -std::atan2(t1.y(), t1.x())};

    seq.push_back(swing);
    seq.push_back(tilt);
    return seq;
}

}  // namespace rollgeo
