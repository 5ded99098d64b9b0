#include "vrid/core/types.hpp"

namespace vrid {

std::string_view device_name(Device d) noexcept {
  switch (d) {
    case Device::Head:
      return "head";
    case Device::Left:
      return "left";
    case Device::Right:
      return "right";
  }
  return "unknown";
}

double MovementSample::channel(std::size_t c) const noexcept {
  const Pose& p = pose(kDevices[c / kChannelsPerDevice]);
  switch (c % kChannelsPerDevice) {
    case 0:
      return p.position.x;
    case 1:
      return p.position.y;
    case 2:
      return p.position.z;
    case 3:
      return p.orientation.w;
    case 4:
      return p.orientation.x;
    case 5:
      return p.orientation.y;
    default:
      return p.orientation.z;
  }
}

}  // namespace vrid
