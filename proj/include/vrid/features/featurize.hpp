#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vrid/core/types.hpp"
#include "vrid/core/windowing.hpp"
#include "vrid/features/feature_set.hpp"

namespace vrid::features {

struct FeaturizeOptions {
  double window_s = 10.0;
  double bin_s = 1.0;
  DropoutPolicy dropout;
};

/// All feature families of one kept window.
struct WindowFeatures {
  std::size_t window_index = 0;
  double start = 0.0;
  std::vector<double> movement;       // 483
  std::vector<double> movement_norm;  // 483, height-normalized
  std::vector<double> traffic;        // 28
};

/// Windowed features of one trace; raw samples are not retained.
struct TraceFeatures {
  std::string user_id;
  std::string game_id;
  double duration = 0.0;
  double window_s = 10.0;
  std::vector<WindowFeatures> windows;
  std::vector<std::size_t> dropped_windows;
};

/// Rebases and canonicalizes the trace, windows it, applies the dropout
/// policy and extracts every feature family per kept window.
TraceFeatures featurize_trace(Trace trace, const FeaturizeOptions& options = {});

/// Feature values of `w` for the given set (movement first, then traffic).
std::vector<double> assemble(const WindowFeatures& w, FeatureSet fs);

/// CSV with `user_id,game_id,window_index,<feature names>`; values use the
/// shortest round-trip decimal form.
std::string feature_matrix_csv(std::span<const TraceFeatures> traces, FeatureSet fs);

}  // namespace vrid::features
