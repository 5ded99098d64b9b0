#include "vrid/features/stats.hpp"

#include <algorithm>
#include <cmath>

#include "vrid/error.hpp"
#include "vrid/simd/kernels.hpp"

namespace vrid::features {

double sorted_quantile(std::span<const double> sorted, double p) {
  const double pos = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summary_stats(std::span<const double> series, std::vector<double>& scratch) {
  if (series.empty()) throw ArgumentError("summary_stats: empty series");
  const double n = static_cast<double>(series.size());
  SummaryStats s;
  s.mean = simd::sum(series) / n;
  simd::min_max(series, s.min, s.max);
  // Rounding can push the mean of a constant series off the constant.
  s.mean = std::clamp(s.mean, s.min, s.max);
  s.std = std::sqrt(simd::sum_sq_dev(series, s.mean) / n);

  scratch.assign(series.begin(), series.end());
  std::sort(scratch.begin(), scratch.end());
  s.q25 = sorted_quantile(scratch, 0.25);
  s.q50 = sorted_quantile(scratch, 0.50);
  s.q75 = sorted_quantile(scratch, 0.75);
  return s;
}

SummaryStats summary_stats(std::span<const double> series) {
  std::vector<double> scratch;
  return summary_stats(series, scratch);
}

std::vector<double> differential(std::span<const double> series, double dt) {
  if (series.size() < 2) throw ArgumentError("differential: need at least 2 points");
  if (!(dt > 0.0)) throw ArgumentError("differential: dt must be > 0");
  std::vector<double> out(series.size() - 1);
  simd::scaled_diff(series, 1.0 / dt, out);
  return out;
}

}  // namespace vrid::features
