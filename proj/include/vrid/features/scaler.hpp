#pragma once

#include <span>
#include <vector>

#include "vrid/util/matrix.hpp"

namespace vrid::features {

/// Per-feature affine map x -> (x - min) / (max - min), fitted on training
/// rows only. Constant training columns map every value to 0; values outside
/// the training range are not clamped.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;
  MinMaxScaler(std::vector<double> min, std::vector<double> max);

  std::size_t size() const noexcept { return min_.size(); }
  const std::vector<double>& min() const noexcept { return min_; }
  const std::vector<double>& max() const noexcept { return max_; }

  /// Throws ArgumentError on length mismatch.
  std::vector<double> apply(std::span<const double> x) const;
  void apply_inplace(Matrix& X) const;

 private:
  std::vector<double> min_;
  std::vector<double> max_;
  std::vector<double> scale_;  // 1 / (max - min), or 0 for constant columns
};

/// Throws ArgumentError on an empty matrix.
MinMaxScaler fit_minmax(const Matrix& train);

inline std::vector<double> apply_minmax(const MinMaxScaler& scaler, std::span<const double> x) {
  return scaler.apply(x);
}

}  // namespace vrid::features
