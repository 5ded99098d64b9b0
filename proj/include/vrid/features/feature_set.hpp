#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vrid::features {

/// The five input configurations compared per game.
enum class FeatureSet {
  Movement,
  Traffic,
  MovementNormHeight,
  MovementAndTraffic,
  MovementNormHeightAndTraffic,
};

inline constexpr std::array<FeatureSet, 5> kAllFeatureSets{
    FeatureSet::Movement, FeatureSet::Traffic, FeatureSet::MovementNormHeight,
    FeatureSet::MovementAndTraffic, FeatureSet::MovementNormHeightAndTraffic};

inline constexpr std::size_t kMovementFeatureCount = 483;
inline constexpr std::size_t kTrafficFeatureCount = 28;
inline constexpr std::size_t kCombinedFeatureCount = 511;

/// "movement", "traffic", "movement_norm_height", "movement_traffic",
/// "movement_norm_height_traffic".
std::string_view to_string(FeatureSet fs) noexcept;
/// Throws ArgumentError on an unknown name.
FeatureSet parse_feature_set(std::string_view name);

bool uses_movement(FeatureSet fs) noexcept;
bool uses_traffic(FeatureSet fs) noexcept;
bool uses_normalized_height(FeatureSet fs) noexcept;

/// Names are `source.channel.derivative.stat`. Movement order: for each pose
/// channel (head, left, right x px py pz qw qx qy qz), derivatives raw, vel,
/// acc, each with the 7 stats; then the 6 geometry channels (raw only).
/// Traffic order: mean_size, bytes, ul_count, dl_count, each with the 7 stats.
const std::vector<std::string>& movement_feature_names();
const std::vector<std::string>& traffic_feature_names();
/// Movement names followed by traffic names where both are used.
const std::vector<std::string>& feature_names(FeatureSet fs);

std::size_t feature_count(FeatureSet fs) noexcept;

}  // namespace vrid::features
