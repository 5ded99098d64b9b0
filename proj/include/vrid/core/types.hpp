#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vrid {

/// Position in meters. x = close-far, y = vertical (height), z = left-right.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Orientation quaternion (w, x, y, z); unit length after canonicalization.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

struct Pose {
  Vec3 position;
  Quaternion orientation;

  friend bool operator==(const Pose&, const Pose&) = default;
};

enum class Device : std::uint8_t { Head = 0, Left = 1, Right = 2 };

inline constexpr std::array<Device, 3> kDevices{Device::Head, Device::Left, Device::Right};
inline constexpr std::size_t kChannelsPerDevice = 7;  // px py pz qw qx qy qz
inline constexpr std::size_t kPoseChannels = kDevices.size() * kChannelsPerDevice;
inline constexpr double kNominalSampleRate = 60.0;

std::string_view device_name(Device d) noexcept;

/// One 60 Hz telemetry row.
struct MovementSample {
  double t = 0.0;
  Pose head;
  Pose left;
  Pose right;

  const Pose& pose(Device d) const noexcept {
    return d == Device::Head ? head : (d == Device::Left ? left : right);
  }
  Pose& pose(Device d) noexcept {
    return d == Device::Head ? head : (d == Device::Left ? left : right);
  }

  /// Channel c in [0, 21): device-major, then px py pz qw qx qy qz.
  double channel(std::size_t c) const noexcept;

  friend bool operator==(const MovementSample&, const MovementSample&) = default;
};

enum class Direction : std::uint8_t { Uplink, Downlink };

struct PacketRecord {
  double t = 0.0;
  std::uint32_t size = 1;
  Direction direction = Direction::Downlink;

  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

/// One user's session in one game. Movement and traffic share a time origin.
struct Trace {
  std::string user_id;
  std::string game_id;
  std::vector<MovementSample> movement;
  std::vector<PacketRecord> traffic;
  double duration = 0.0;
};

/// Samples and packets of one accumulation period [start, start + length).
/// Views into the owning Trace, which must outlive the segment.
struct WindowSegment {
  std::string_view user_id;
  std::string_view game_id;
  std::size_t window_index = 0;
  double start = 0.0;
  double length = 0.0;
  std::span<const MovementSample> movement;
  std::span<const PacketRecord> traffic;
};

}  // namespace vrid
