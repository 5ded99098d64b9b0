#include "vrid/features/feature_set.hpp"

#include "vrid/core/types.hpp"
#include "vrid/error.hpp"
#include "vrid/features/geometry.hpp"
#include "vrid/features/stats.hpp"
#include "vrid/features/traffic.hpp"

namespace vrid::features {

std::string_view to_string(FeatureSet fs) noexcept {
  switch (fs) {
    case FeatureSet::Movement:
      return "movement";
    case FeatureSet::Traffic:
      return "traffic";
    case FeatureSet::MovementNormHeight:
      return "movement_norm_height";
    case FeatureSet::MovementAndTraffic:
      return "movement_traffic";
    case FeatureSet::MovementNormHeightAndTraffic:
      return "movement_norm_height_traffic";
  }
  return "unknown";
}

FeatureSet parse_feature_set(std::string_view name) {
  for (FeatureSet fs : kAllFeatureSets) {
    if (to_string(fs) == name) return fs;
  }
  throw ArgumentError("unknown feature set '" + std::string(name) + "'");
}

bool uses_movement(FeatureSet fs) noexcept { return fs != FeatureSet::Traffic; }

bool uses_traffic(FeatureSet fs) noexcept {
  return fs == FeatureSet::Traffic || fs == FeatureSet::MovementAndTraffic ||
         fs == FeatureSet::MovementNormHeightAndTraffic;
}

bool uses_normalized_height(FeatureSet fs) noexcept {
  return fs == FeatureSet::MovementNormHeight || fs == FeatureSet::MovementNormHeightAndTraffic;
}

namespace {

std::vector<std::string> build_movement_names() {
  static constexpr const char* kSuffix[] = {"px", "py", "pz", "qw", "qx", "qy", "qz"};
  static constexpr const char* kDerivative[] = {"raw", "vel", "acc"};
  std::vector<std::string> names;
  names.reserve(kMovementFeatureCount);
  for (Device d : kDevices) {
    for (const char* suffix : kSuffix) {
      const std::string channel = std::string(device_name(d)) + "_" + suffix;
      for (const char* deriv : kDerivative) {
        for (auto stat : kStatNames) {
          names.push_back("mv." + channel + "." + deriv + "." + std::string(stat));
        }
      }
    }
  }
  for (auto g : kGeometryNames) {
    for (auto stat : kStatNames) {
      names.push_back("mv." + std::string(g) + ".raw." + std::string(stat));
    }
  }
  return names;
}

std::vector<std::string> build_traffic_names() {
  std::vector<std::string> names;
  names.reserve(kTrafficFeatureCount);
  for (auto base : kTrafficBaseNames) {
    for (auto stat : kStatNames) {
      names.push_back("tr." + std::string(base) + ".raw." + std::string(stat));
    }
  }
  return names;
}

std::vector<std::string> concat(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

const std::vector<std::string>& movement_feature_names() {
  static const std::vector<std::string> names = build_movement_names();
  return names;
}

const std::vector<std::string>& traffic_feature_names() {
  static const std::vector<std::string> names = build_traffic_names();
  return names;
}

const std::vector<std::string>& feature_names(FeatureSet fs) {
  static const std::vector<std::string> combined =
      concat(movement_feature_names(), traffic_feature_names());
  if (fs == FeatureSet::Traffic) return traffic_feature_names();
  if (uses_traffic(fs)) return combined;
  return movement_feature_names();
}

std::size_t feature_count(FeatureSet fs) noexcept {
  if (fs == FeatureSet::Traffic) return kTrafficFeatureCount;
  return uses_traffic(fs) ? kCombinedFeatureCount : kMovementFeatureCount;
}

}  // namespace vrid::features
