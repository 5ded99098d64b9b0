#include "vrid/core/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vrid/core/quaternion.hpp"
#include "vrid/error.hpp"
#include "vrid/util/log.hpp"

namespace vrid {

Trace rebase_time(Trace trace) {
  double t0 = std::numeric_limits<double>::infinity();
  if (!trace.movement.empty()) t0 = std::min(t0, trace.movement.front().t);
  if (!trace.traffic.empty()) t0 = std::min(t0, trace.traffic.front().t);
  if (!std::isfinite(t0) || t0 == 0.0) return trace;
  for (auto& s : trace.movement) s.t -= t0;
  for (auto& p : trace.traffic) p.t -= t0;
  trace.duration = std::max(0.0, trace.duration - t0);
  return trace;
}

Trace canonicalize_quaternions(Trace trace) {
  for (Device d : kDevices) {
    Quaternion prev{};
    for (std::size_t i = 0; i < trace.movement.size(); ++i) {
      Quaternion& q = trace.movement[i].pose(d).orientation;
      const double n = norm(q);
      if (!(n > 0.0) || !std::isfinite(n)) {
        throw DataQualityError("zero-norm " + std::string(device_name(d)) +
                                   " quaternion at sample index " + std::to_string(i),
                               i);
      }
      q = scaled(q, 1.0 / n);
      if (i == 0) {
        if (q.w < 0.0 || (q.w == 0.0 && q.x < 0.0)) q = -q;
      } else if (dot(q, prev) < 0.0) {
        q = -q;
      }
      prev = q;
    }
  }
  return trace;
}

Trace prepare_trace(Trace trace) { return canonicalize_quaternions(rebase_time(std::move(trace))); }

HeightMeans trace_height_means(const Trace& trace) {
  HeightMeans m;
  if (trace.movement.empty()) return m;
  double h = 0.0, l = 0.0, r = 0.0;
  for (const auto& s : trace.movement) {
    h += s.head.position.y;
    l += s.left.position.y;
    r += s.right.position.y;
  }
  const double n = static_cast<double>(trace.movement.size());
  m.head = h / n;
  m.left = l / n;
  m.right = r / n;
  return m;
}

std::size_t full_window_count(double duration, double window_s) {
  if (!(window_s > 0.0)) throw ArgumentError("window length must be > 0");
  if (!(duration > 0.0)) return 0;
  // Tolerate durations like 599.99999999997 that are 600 s in intent.
  return static_cast<std::size_t>(std::floor(duration / window_s + 1e-9));
}

std::vector<WindowSegment> window_trace(const Trace& trace, double window_s) {
  const std::size_t n_windows = full_window_count(trace.duration, window_s);
  std::vector<WindowSegment> out;
  if (trace.movement.empty() && trace.traffic.empty()) return out;
  out.reserve(n_windows);

  auto mv_begin = trace.movement.begin();
  auto tr_begin = trace.traffic.begin();
  for (std::size_t i = 0; i < n_windows; ++i) {
    const double start = static_cast<double>(i) * window_s;
    const double end = static_cast<double>(i + 1) * window_s;
    mv_begin = std::lower_bound(mv_begin, trace.movement.end(), start,
                                [](const MovementSample& s, double t) { return s.t < t; });
    tr_begin = std::lower_bound(tr_begin, trace.traffic.end(), start,
                                [](const PacketRecord& p, double t) { return p.t < t; });
    auto mv_end = std::lower_bound(mv_begin, trace.movement.end(), end,
                                   [](const MovementSample& s, double t) { return s.t < t; });
    auto tr_end = std::lower_bound(tr_begin, trace.traffic.end(), end,
                                   [](const PacketRecord& p, double t) { return p.t < t; });
    WindowSegment w;
    w.user_id = trace.user_id;
    w.game_id = trace.game_id;
    w.window_index = i;
    w.start = start;
    w.length = window_s;
    w.movement = {mv_begin, mv_end};
    w.traffic = {tr_begin, tr_end};
    out.push_back(w);
    mv_begin = mv_end;
    tr_begin = tr_end;
  }
  return out;
}

DropoutResult apply_dropout_tolerance(std::vector<WindowSegment> windows,
                                      const DropoutPolicy& policy) {
  DropoutResult result;
  result.kept.reserve(windows.size());
  for (auto& w : windows) {
    const double nominal = w.length * policy.sample_rate;
    if (static_cast<double>(w.movement.size()) >= policy.min_fraction * nominal) {
      result.kept.push_back(w);
    } else {
      result.dropped.push_back(w.window_index);
      std::ostringstream msg;
      msg << "dropping window " << w.window_index << " of " << w.user_id << "/" << w.game_id << ": "
          << w.movement.size() << " movement samples, need >= " << policy.min_fraction * nominal;
      log::warning(msg.str());
    }
  }
  return result;
}

namespace {

bool is_multiple(double value, double step) {
  const double r = value / step;
  return std::abs(r - std::round(r)) < 1e-9;
}

void check_split(double trace_duration, double train_s, double test_s) {
  if (train_s < 0.0 || !(test_s > 0.0)) {
    throw ArgumentError("split requires train_s >= 0 and test_s > 0");
  }
  const double needed = train_s + test_s;
  if (trace_duration + 1e-9 < needed) {
    std::ostringstream msg;
    msg << "insufficient duration: trace has " << trace_duration << " s, split needs " << needed
        << " s (short by " << needed - trace_duration << " s)";
    throw InsufficientDurationError(msg.str(), needed - trace_duration);
  }
}

}  // namespace

SplitIndices split_train_test(std::span<const double> window_starts, double trace_duration,
                              double window_s, double train_s, double test_s) {
  check_split(trace_duration, train_s, test_s);
  if (!(window_s > 0.0)) throw ArgumentError("window length must be > 0");
  if (!is_multiple(train_s, window_s) || !is_multiple(test_s, window_s)) {
    throw ArgumentError("train_s and test_s must be multiples of the window length");
  }
  SplitIndices out;
  const double eps = 1e-9 * window_s;
  for (std::size_t i = 0; i < window_starts.size(); ++i) {
    const double s = window_starts[i];
    if (s < train_s - eps) {
      out.train.push_back(i);
    } else if (s < train_s + test_s - eps) {
      out.test.push_back(i);
    }
  }
  return out;
}

WindowSplit split_train_test(std::span<const WindowSegment> windows, double trace_duration,
                             double train_s, double test_s) {
  WindowSplit out;
  if (windows.empty()) {
    check_split(trace_duration, train_s, test_s);
    return out;
  }
  std::vector<double> starts;
  starts.reserve(windows.size());
  for (const auto& w : windows) starts.push_back(w.start);
  const auto idx =
      split_train_test(starts, trace_duration, windows.front().length, train_s, test_s);
  for (auto i : idx.train) out.train.push_back(windows[i]);
  for (auto i : idx.test) out.test.push_back(windows[i]);
  return out;
}

}  // namespace vrid
