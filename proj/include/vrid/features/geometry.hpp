#pragma once

#include <array>
#include <string_view>

#include "vrid/core/types.hpp"

namespace vrid::features {

inline constexpr std::size_t kGeometryChannels = 6;
inline constexpr std::array<std::string_view, kGeometryChannels> kGeometryNames{
    "dist_left_head",  "dist_right_head",  "dist_left_right",
    "angle_left_head", "angle_right_head", "angle_left_right"};

/// Reference axis rotated by a device's orientation to get its forward vector.
inline constexpr Vec3 kForwardAxis{0.0, 0.0, -1.0};

Vec3 forward_vector(const Quaternion& orientation) noexcept;

/// Euclidean distances (m) of the pairs left-head, right-head, left-right,
/// then the angles (rad, [0, pi]) between the same pairs' forward vectors.
std::array<double, kGeometryChannels> derived_geometry(const MovementSample& sample) noexcept;

}  // namespace vrid::features
