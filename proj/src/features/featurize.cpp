#include "vrid/features/featurize.hpp"

#include "vrid/features/extract.hpp"
#include "vrid/features/traffic.hpp"
#include "vrid/util/format.hpp"

namespace vrid::features {

TraceFeatures featurize_trace(Trace trace, const FeaturizeOptions& options) {
  trace = prepare_trace(std::move(trace));
  TraceFeatures out;
  out.user_id = trace.user_id;
  out.game_id = trace.game_id;
  out.duration = trace.duration;
  out.window_s = options.window_s;

  const HeightMeans heights = trace_height_means(trace);
  auto kept = apply_dropout_tolerance(window_trace(trace, options.window_s), options.dropout);
  out.dropped_windows = std::move(kept.dropped);
  out.windows.reserve(kept.kept.size());
  for (const auto& seg : kept.kept) {
    WindowFeatures w;
    w.window_index = seg.window_index;
    w.start = seg.start;
    w.movement = movement_features(seg, false, heights).values;
    w.movement_norm = movement_features(seg, true, heights).values;
    w.traffic = traffic_features(seg, options.bin_s).values;
    out.windows.push_back(std::move(w));
  }
  return out;
}

std::vector<double> assemble(const WindowFeatures& w, FeatureSet fs) {
  std::vector<double> out;
  out.reserve(feature_count(fs));
  if (uses_movement(fs)) {
    const auto& mv = uses_normalized_height(fs) ? w.movement_norm : w.movement;
    out.insert(out.end(), mv.begin(), mv.end());
  }
  if (uses_traffic(fs)) out.insert(out.end(), w.traffic.begin(), w.traffic.end());
  return out;
}

std::string feature_matrix_csv(std::span<const TraceFeatures> traces, FeatureSet fs) {
  std::string out = "user_id,game_id,window_index";
  for (const auto& name : feature_names(fs)) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (const auto& t : traces) {
    for (const auto& w : t.windows) {
      out += t.user_id;
      out += ',';
      out += t.game_id;
      out += ',';
      out += std::to_string(w.window_index);
      for (double v : assemble(w, fs)) {
        out += ',';
        append_shortest(out, v);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace vrid::features
