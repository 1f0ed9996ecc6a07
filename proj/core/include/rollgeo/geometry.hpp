#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <vector>

#include "rollgeo/errors.hpp"

namespace rollgeo {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

inline Vec3 e1() { return Vec3(1.0, 0.0, 0.0); }
inline Vec3 e2() { return Vec3(0.0, 1.0, 0.0); }
inline Vec3 e3() { return Vec3(0.0, 0.0, 1.0); }

/// A 3-vector checked to have unit length at construction.
class UnitVec3 {
public:
    explicit UnitVec3(const Vec3& v, double tol = 1e-12);

    /// Rescales v to unit length. Rejects vectors too short to carry a direction.
    static UnitVec3 normalized(const Vec3& v);

    const Vec3& vec() const noexcept { return v_; }
    operator const Vec3&() const noexcept { return v_; }

private:
    struct unchecked_tag {};
    UnitVec3(const Vec3& v, unchecked_tag) noexcept : v_(v) {}
    Vec3 v_;
};

/// Rotation about the axis through `axis` by `angle` radians, counterclockwise
/// as seen with the axis pointing toward the viewer.
struct AxisAngle {
    UnitVec3 axis;
    double angle = 0.0;
};

/// Rodrigues evaluation of AxisAngle applied to x. Matrix-free; an exact
/// identity (bitwise) when angle == 0.
Vec3 rotate(const AxisAngle& r, const Vec3& x) noexcept;

/// d/dtheta of rotate((axis, theta), x) at theta = 0, i.e. axis x x.
Vec3 rotation_generator(const UnitVec3& axis, const Vec3& x) noexcept;

/// An ordered product of axis-angle rotations, written left to right as in
/// R0 R1 ... Rk; apply() evaluates the rightmost factor first. Zero-angle
/// factors are skipped so an all-zero sequence is a bitwise identity.
class RotationSequence {
public:
    RotationSequence() = default;
    explicit RotationSequence(std::vector<AxisAngle> factors) : factors_(std::move(factors)) {}

    void push_back(const AxisAngle& r) { factors_.push_back(r); }
    bool empty() const noexcept { return factors_.empty(); }
    std::size_t size() const noexcept { return factors_.size(); }
    const AxisAngle& operator[](std::size_t i) const { return factors_[i]; }

    Vec3 apply(const Vec3& x) const noexcept;

    /// Two-factor sequence mapping the right-handed frame {t, w x t, w} to
    /// {e1, e2, e3}; requires t unit and perpendicular to w.
    static RotationSequence frame_to_base(const UnitVec3& w, const UnitVec3& t);

private:
    std::vector<AxisAngle> factors_;
};

}  // namespace rollgeo
