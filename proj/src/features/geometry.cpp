#include "vrid/features/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vrid/core/quaternion.hpp"

namespace vrid::features {
namespace {

double distance(const Vec3& a, const Vec3& b) noexcept {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double angle(const Vec3& a, const Vec3& b) noexcept {
  const double na = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
  const double nb = std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
  double c = (a.x * b.x + a.y * b.y + a.z * b.z) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace

Vec3 forward_vector(const Quaternion& orientation) noexcept {
  return rotate(orientation, kForwardAxis);
}

std::array<double, kGeometryChannels> derived_geometry(const MovementSample& s) noexcept {
  const Vec3 fh = forward_vector(s.head.orientation);
  const Vec3 fl = forward_vector(s.left.orientation);
  const Vec3 fr = forward_vector(s.right.orientation);
  return {distance(s.left.position, s.head.position),
          distance(s.right.position, s.head.position),
          distance(s.left.position, s.right.position),
          angle(fl, fh),
          angle(fr, fh),
          angle(fl, fr)};
}

}  // namespace vrid::features
