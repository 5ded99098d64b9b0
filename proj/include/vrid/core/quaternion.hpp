#pragma once

#include <cmath>

#include "vrid/core/types.hpp"

namespace vrid {

inline double dot(const Quaternion& a, const Quaternion& b) noexcept {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Quaternion& q) noexcept { return std::sqrt(dot(q, q)); }

inline Quaternion operator-(const Quaternion& q) noexcept { return {-q.w, -q.x, -q.y, -q.z}; }

inline Quaternion scaled(const Quaternion& q, double s) noexcept {
  return {q.w * s, q.x * s, q.y * s, q.z * s};
}

inline Quaternion multiply(const Quaternion& a, const Quaternion& b) noexcept {
  return {
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion conjugate(const Quaternion& q) noexcept { return {q.w, -q.x, -q.y, -q.z}; }

/// Rotation by `angle` radians about the unit `axis`.
inline Quaternion axis_angle(const Vec3& axis, double angle) noexcept {
  const double s = std::sin(angle / 2.0);
  return {std::cos(angle / 2.0), axis.x * s, axis.y * s, axis.z * s};
}

/// Rotates v by the unit quaternion q.
inline Vec3 rotate(const Quaternion& q, const Vec3& v) noexcept {
  // v' = v + 2 w (u x v) + 2 u x (u x v), u = (x, y, z)
  const double tx = 2.0 * (q.y * v.z - q.z * v.y);
  const double ty = 2.0 * (q.z * v.x - q.x * v.z);
  const double tz = 2.0 * (q.x * v.y - q.y * v.x);
  return {v.x + q.w * tx + (q.y * tz - q.z * ty), v.y + q.w * ty + (q.z * tx - q.x * tz),
          v.z + q.w * tz + (q.x * ty - q.y * tx)};
}

/// Angle in [0, pi] between the rotations represented by two unit quaternions.
inline double rotation_angle_between(const Quaternion& a, const Quaternion& b) noexcept {
  double c = std::abs(dot(a, b));
  if (c > 1.0) c = 1.0;
  return 2.0 * std::acos(c);
}

}  // namespace vrid
