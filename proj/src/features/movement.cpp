#include <array>

#include "vrid/error.hpp"
#include "vrid/features/extract.hpp"
#include "vrid/features/feature_set.hpp"
#include "vrid/features/geometry.hpp"
#include "vrid/features/stats.hpp"
#include "vrid/simd/kernels.hpp"

namespace vrid::features {
namespace {

void append_stats(std::vector<double>& out, std::span<const double> series,
                  std::vector<double>& scratch) {
  const auto v = summary_stats(series, scratch).values();
  out.insert(out.end(), v.begin(), v.end());
}

}  // namespace

FeatureVector movement_features(const WindowSegment& segment, bool normalize_height,
                                const HeightMeans& height_means) {
  const std::size_t m = segment.movement.size();
  if (m < 3) {
    throw ArgumentError("movement_features: window " + std::to_string(segment.window_index) +
                        " has " + std::to_string(m) + " samples, need >= 3");
  }
  FeatureVector fv;
  fv.names = &movement_feature_names();
  fv.provenance = {std::string(segment.user_id), std::string(segment.game_id),
                   segment.window_index};
  fv.values.reserve(kMovementFeatureCount);

  std::vector<double> series(m), vel(m - 1), acc(m - 2), scratch;
  scratch.reserve(m);
  const double inv_dt = 1.0 / kMovementDt;

  for (std::size_t c = 0; c < kPoseChannels; ++c) {
    for (std::size_t i = 0; i < m; ++i) series[i] = segment.movement[i].channel(c);
    if (normalize_height && c % kChannelsPerDevice == 1) {
      const double divisor = height_means.of(kDevices[c / kChannelsPerDevice]);
      if (divisor == 0.0) throw ArgumentError("movement_features: zero mean height");
      for (double& v : series) v /= divisor;
    }
    simd::scaled_diff(series, inv_dt, vel);
    simd::scaled_diff(vel, inv_dt, acc);
    append_stats(fv.values, series, scratch);
    append_stats(fv.values, vel, scratch);
    append_stats(fv.values, acc, scratch);
  }

  std::array<std::vector<double>, kGeometryChannels> geom;
  for (auto& g : geom) g.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto values = derived_geometry(segment.movement[i]);
    for (std::size_t k = 0; k < kGeometryChannels; ++k) geom[k][i] = values[k];
  }
  for (const auto& g : geom) append_stats(fv.values, g, scratch);
  return fv;
}

}  // namespace vrid::features
