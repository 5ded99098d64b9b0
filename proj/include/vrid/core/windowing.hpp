#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vrid/core/types.hpp"

namespace vrid {

/// Shifts both streams so the earliest timestamp across movement and traffic is 0.
/// Duration is reduced by the same offset.
Trace rebase_time(Trace trace);

/// Renormalizes every quaternion and fixes its sign for hemisphere continuity:
/// dot(q[i], q[i-1]) >= 0, and the first quaternion has w >= 0 (tie: x >= 0).
/// Throws DataQualityError naming the sample index on a zero-norm quaternion.
Trace canonicalize_quaternions(Trace trace);

/// rebase_time followed by canonicalize_quaternions.
Trace prepare_trace(Trace trace);

/// Mean vertical position per device over the whole trace.
struct HeightMeans {
  double head = 1.0;
  double left = 1.0;
  double right = 1.0;

  double of(Device d) const noexcept {
    return d == Device::Head ? head : (d == Device::Left ? left : right);
  }
};

HeightMeans trace_height_means(const Trace& trace);

/// Number of full windows of length `window_s` in `duration` seconds.
std::size_t full_window_count(double duration, double window_s);

/// Partitions a time-sorted trace into consecutive half-open windows
/// [i W, (i + 1) W) aligned to t = 0. The trailing partial window is dropped.
/// Throws ArgumentError if window_s <= 0.
std::vector<WindowSegment> window_trace(const Trace& trace, double window_s);

struct DropoutPolicy {
  double sample_rate = kNominalSampleRate;
  /// Keep windows holding at least this fraction of the nominal sample count.
  double min_fraction = 0.5;
};

struct DropoutResult {
  std::vector<WindowSegment> kept;
  std::vector<std::size_t> dropped;  // window indices
};

/// Discards (and logs) windows with too few movement samples.
DropoutResult apply_dropout_tolerance(std::vector<WindowSegment> windows,
                                      const DropoutPolicy& policy = {});

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Assigns windows (by start time) to train [0, train_s) and test
/// [train_s, train_s + test_s). Throws InsufficientDurationError when the
/// trace is shorter than train_s + test_s, ArgumentError when the boundaries
/// are not multiples of window_s.
SplitIndices split_train_test(std::span<const double> window_starts, double trace_duration,
                              double window_s, double train_s = 480.0, double test_s = 120.0);

struct WindowSplit {
  std::vector<WindowSegment> train;
  std::vector<WindowSegment> test;
};

WindowSplit split_train_test(std::span<const WindowSegment> windows, double trace_duration,
                             double train_s = 480.0, double test_s = 120.0);

}  // namespace vrid
