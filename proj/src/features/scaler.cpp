#include "vrid/features/scaler.hpp"

#include <string>

#include "vrid/error.hpp"
#include "vrid/simd/kernels.hpp"

namespace vrid::features {

MinMaxScaler::MinMaxScaler(std::vector<double> min, std::vector<double> max)
    : min_(std::move(min)), max_(std::move(max)) {
  if (min_.size() != max_.size()) throw ArgumentError("MinMaxScaler: min/max length mismatch");
  scale_.resize(min_.size());
  for (std::size_t j = 0; j < min_.size(); ++j) {
    if (max_[j] < min_[j]) throw ArgumentError("MinMaxScaler: max < min");
    scale_[j] = max_[j] > min_[j] ? 1.0 / (max_[j] - min_[j]) : 0.0;
  }
}

std::vector<double> MinMaxScaler::apply(std::span<const double> x) const {
  if (x.size() != min_.size()) {
    throw ArgumentError("MinMaxScaler: vector has " + std::to_string(x.size()) +
                        " features, scaler was fitted on " + std::to_string(min_.size()));
  }
  std::vector<double> out(x.size());
  simd::affine(x, min_, scale_, out);
  return out;
}

void MinMaxScaler::apply_inplace(Matrix& X) const {
  if (X.cols() != min_.size()) {
    throw ArgumentError("MinMaxScaler: matrix has " + std::to_string(X.cols()) +
                        " features, scaler was fitted on " + std::to_string(min_.size()));
  }
  for (std::size_t r = 0; r < X.rows(); ++r) simd::affine(X.row(r), min_, scale_, X.row(r));
}

MinMaxScaler fit_minmax(const Matrix& train) {
  if (train.rows() == 0) throw ArgumentError("fit_minmax: empty training matrix");
  std::vector<double> lo(train.row(0).begin(), train.row(0).end());
  std::vector<double> hi = lo;
  for (std::size_t r = 1; r < train.rows(); ++r) {
    const auto row = train.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < lo[j]) lo[j] = row[j];
      if (row[j] > hi[j]) hi[j] = row[j];
    }
  }
  return MinMaxScaler(std::move(lo), std::move(hi));
}

}  // namespace vrid::features
