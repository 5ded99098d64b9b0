#include "vrid/evaluation/metrics.hpp"

#include "vrid/error.hpp"

namespace vrid::evaluation {
namespace {

void check_lengths(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred,
                   const char* who) {
  if (y_true.size() != y_pred.size()) {
    throw ArgumentError(std::string(who) + ": y_true and y_pred lengths differ");
  }
  if (y_true.empty()) throw ArgumentError(std::string(who) + ": empty input");
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred) {
  check_lengths(y_true, y_pred, "accuracy");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i] ? 1 : 0;
  return ratio(hits, y_true.size());
}

ConfusionMatrix::ConfusionMatrix(std::size_t n_labels)
    : n_(n_labels), counts_(n_labels * n_labels) {}

ConfusionMatrix::ConfusionMatrix(std::size_t n_labels, std::span<const std::size_t> y_true,
                                 std::span<const std::size_t> y_pred)
    : ConfusionMatrix(n_labels) {
  if (y_true.size() != y_pred.size()) throw ArgumentError("confusion: lengths differ");
  for (std::size_t i = 0; i < y_true.size(); ++i) add(y_true[i], y_pred[i]);
}

void ConfusionMatrix::add(std::size_t t, std::size_t p) {
  if (t >= n_ || p >= n_) throw ArgumentError("confusion: label out of range");
  ++counts_[t * n_ + p];
}

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

std::size_t ConfusionMatrix::correct() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

std::size_t ConfusionMatrix::row_sum(std::size_t t) const noexcept {
  std::size_t s = 0;
  for (std::size_t p = 0; p < n_; ++p) s += (*this)(t, p);
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t p) const noexcept {
  std::size_t s = 0;
  for (std::size_t t = 0; t < n_; ++t) s += (*this)(t, p);
  return s;
}

double ConfusionMatrix::accuracy() const noexcept { return ratio(correct(), total()); }

double ConfusionMatrix::precision(std::size_t label) const noexcept {
  return ratio((*this)(label, label), col_sum(label));
}

double ConfusionMatrix::recall(std::size_t label) const noexcept {
  return ratio((*this)(label, label), row_sum(label));
}

double ConfusionMatrix::f1(std::size_t label) const noexcept {
  // 2 tp / (2 tp + fp + fn), equal to the harmonic mean of precision and recall
  const std::size_t tp = (*this)(label, label);
  return ratio(2 * tp, row_sum(label) + col_sum(label));
}

double ConfusionMatrix::macro_f1() const noexcept {
  if (n_ == 0) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < n_; ++k) s += f1(k);
  return s / static_cast<double>(n_);
}

double macro_f1(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred,
                std::size_t n_labels) {
  check_lengths(y_true, y_pred, "macro_f1");
  return ConfusionMatrix(n_labels, y_true, y_pred).macro_f1();
}

}  // namespace vrid::evaluation
