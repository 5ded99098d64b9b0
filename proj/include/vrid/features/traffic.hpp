#pragma once

#include <array>
#include <string_view>

#include "vrid/core/types.hpp"
#include "vrid/features/extract.hpp"

namespace vrid::features {

inline constexpr std::array<std::string_view, 4> kTrafficBaseNames{"mean_size", "bytes", "ul_count",
                                                                   "dl_count"};

/// Per-bin base series of one window: mean packet size over both directions
/// (0 for an empty bin), total bytes, uplink count, downlink count.
struct TrafficBins {
  std::vector<double> mean_size;
  std::vector<double> bytes;
  std::vector<double> ul_count;
  std::vector<double> dl_count;
};

/// Throws ArgumentError unless bin_s > 0 divides the window length.
TrafficBins bin_traffic(const WindowSegment& segment, double bin_s);

/// 4 base series x 7 stats = 28 features. A window without packets yields zeros.
FeatureVector traffic_features(const WindowSegment& segment, double bin_s = 1.0);

}  // namespace vrid::features
