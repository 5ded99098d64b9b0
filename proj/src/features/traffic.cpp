#include "vrid/features/traffic.hpp"

#include <cmath>

#include "vrid/error.hpp"
#include "vrid/features/feature_set.hpp"
#include "vrid/features/stats.hpp"

namespace vrid::features {

TrafficBins bin_traffic(const WindowSegment& segment, double bin_s) {
  if (!(bin_s > 0.0)) throw ArgumentError("traffic bin must be > 0");
  const double ratio = segment.length / bin_s;
  const auto n_bins = static_cast<std::size_t>(std::llround(ratio));
  if (n_bins == 0 || std::abs(ratio - static_cast<double>(n_bins)) > 1e-9) {
    throw ArgumentError("traffic bin must divide the window length");
  }
  TrafficBins bins;
  bins.mean_size.assign(n_bins, 0.0);
  bins.bytes.assign(n_bins, 0.0);
  bins.ul_count.assign(n_bins, 0.0);
  bins.dl_count.assign(n_bins, 0.0);
  for (const auto& p : segment.traffic) {
    auto b = static_cast<std::size_t>(std::floor((p.t - segment.start) / bin_s));
    if (b >= n_bins) b = n_bins - 1;
    bins.bytes[b] += static_cast<double>(p.size);
    (p.direction == Direction::Uplink ? bins.ul_count : bins.dl_count)[b] += 1.0;
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    const double count = bins.ul_count[b] + bins.dl_count[b];
    bins.mean_size[b] = count > 0.0 ? bins.bytes[b] / count : 0.0;
  }
  return bins;
}

FeatureVector traffic_features(const WindowSegment& segment, double bin_s) {
  FeatureVector fv;
  fv.names = &traffic_feature_names();
  fv.provenance = {std::string(segment.user_id), std::string(segment.game_id),
                   segment.window_index};
  fv.values.reserve(kTrafficFeatureCount);
  const TrafficBins bins = bin_traffic(segment, bin_s);
  std::vector<double> scratch;
  for (const auto* series : {&bins.mean_size, &bins.bytes, &bins.ul_count, &bins.dl_count}) {
    const auto v = summary_stats(*series, scratch).values();
    fv.values.insert(fv.values.end(), v.begin(), v.end());
  }
  return fv;
}

}  // namespace vrid::features
