#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace vrid::features {

inline constexpr std::size_t kStatCount = 7;
inline constexpr std::array<std::string_view, kStatCount> kStatNames{"mean", "min", "max", "q25",
                                                                     "q50",  "q75", "std"};

/// Mean, min, max, quartiles (linear interpolation at (n - 1) p) and
/// population standard deviation, in kStatNames order.
struct SummaryStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double std = 0.0;

  std::array<double, kStatCount> values() const noexcept {
    return {mean, min, max, q25, q50, q75, std};
  }
};

/// Throws ArgumentError on an empty series.
SummaryStats summary_stats(std::span<const double> series);

/// Same as summary_stats but reuses `scratch` for the sorted copy.
SummaryStats summary_stats(std::span<const double> series, std::vector<double>& scratch);

/// Quantile of already sorted data by linear interpolation at (n - 1) p.
double sorted_quantile(std::span<const double> sorted, double p);

/// out[i] = (series[i + 1] - series[i]) / dt. Throws ArgumentError if n < 2 or dt <= 0.
std::vector<double> differential(std::span<const double> series, double dt);

}  // namespace vrid::features
