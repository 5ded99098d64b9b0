#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vrid::evaluation {

/// Fraction of positions where y_pred equals y_true. Throws ArgumentError on
/// empty input or a length mismatch.
double accuracy(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred);

/// counts(t, p): number of samples of true label t predicted as p.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t n_labels = 0);
  /// Throws ArgumentError on a length mismatch or a label >= n_labels.
  ConfusionMatrix(std::size_t n_labels, std::span<const std::size_t> y_true,
                  std::span<const std::size_t> y_pred);

  std::size_t n_labels() const noexcept { return n_; }
  std::size_t operator()(std::size_t t, std::size_t p) const noexcept {
    return counts_[t * n_ + p];
  }
  void add(std::size_t t, std::size_t p);

  std::size_t total() const noexcept;
  std::size_t correct() const noexcept;
  std::size_t row_sum(std::size_t t) const noexcept;
  std::size_t col_sum(std::size_t p) const noexcept;
  double accuracy() const noexcept;

  /// 0/0 is reported as 0.
  double precision(std::size_t label) const noexcept;
  double recall(std::size_t label) const noexcept;
  double f1(std::size_t label) const noexcept;
  double macro_f1() const noexcept;

 private:
  std::size_t n_;
  std::vector<std::size_t> counts_;
};

/// Unweighted mean over labels [0, n_labels) of per-label F1.
double macro_f1(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred,
                std::size_t n_labels);

}  // namespace vrid::evaluation
