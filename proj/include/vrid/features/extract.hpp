#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vrid/core/types.hpp"
#include "vrid/core/windowing.hpp"

namespace vrid::features {

struct Provenance {
  std::string user_id;
  std::string game_id;
  std::size_t window_index = 0;
};

/// Named feature values of one window. `names` points at one of the static
/// name lists in feature_set.hpp.
struct FeatureVector {
  std::vector<double> values;
  const std::vector<std::string>* names = nullptr;
  Provenance provenance;
};

/// Movement sample spacing assumed for velocity/acceleration.
inline constexpr double kMovementDt = 1.0 / kNominalSampleRate;

/// 21 pose channels x {raw, vel, acc} x 7 stats, then 6 geometry channels x 7
/// stats (483 values). With normalize_height the y position of each device is
/// divided by that device's trace mean before extraction; geometry always uses
/// raw positions. Requires at least 3 movement samples.
FeatureVector movement_features(const WindowSegment& segment, bool normalize_height,
                                const HeightMeans& height_means);

}  // namespace vrid::features
