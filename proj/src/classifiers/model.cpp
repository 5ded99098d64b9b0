#include "vrid/classifiers/model.hpp"

#include <array>
#include <cmath>

#include "vrid/error.hpp"

namespace vrid::classifiers {

namespace {
constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kKindNames{{
    {ModelKind::LogisticRegression, "lr"},
    {ModelKind::Qda, "qda"},
    {ModelKind::RandomForest, "rf"},
    {ModelKind::ExtraTrees, "extra_trees"},
    {ModelKind::Gbm, "gbm"},
    {ModelKind::Ensemble, "ensemble"},
}};
}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ArgumentError("unknown model kind '" + std::string(name) + "'");
}

void check_training_data(const LabeledData& data, std::string_view who) {
  const std::string prefix(who);
  if (data.labels.size() < 2) throw ArgumentError(prefix + ": need at least 2 labels");
  if (data.X.rows() == 0) throw ArgumentError(prefix + ": empty training set");
  if (data.y.size() != data.X.rows()) {
    throw ArgumentError(prefix + ": label count does not match row count");
  }
  for (std::size_t label : data.y) {
    if (label >= data.labels.size()) throw ArgumentError(prefix + ": label index out of range");
  }
  for (double v : data.X.data()) {
    if (!std::isfinite(v)) throw ArgumentError(prefix + ": non-finite feature value");
  }
}

std::size_t argmax(std::span<const double> values) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

void Model::predict_proba(std::span<const double> x, std::span<double> out) const {
  if (x.size() != n_features_) {
    throw ArgumentError("predict_proba: expected " + std::to_string(n_features_) +
                        " features, got " + std::to_string(x.size()));
  }
  if (out.size() != labels_.size()) {
    throw ArgumentError("predict_proba: output size does not match label count");
  }
  compute_proba(x, out);
}

std::vector<double> Model::predict_proba(std::span<const double> x) const {
  std::vector<double> out(labels_.size());
  predict_proba(x, out);
  return out;
}

Matrix Model::predict_proba(const Matrix& X) const {
  if (X.rows() > 0 && X.cols() != n_features_) {
    throw ArgumentError("predict_proba: expected " + std::to_string(n_features_) +
                        " features, got " + std::to_string(X.cols()));
  }
  Matrix P(X.rows(), labels_.size());
  for (std::size_t r = 0; r < X.rows(); ++r) compute_proba(X.row(r), P.row(r));
  return P;
}

std::vector<std::size_t> Model::predict(const Matrix& X) const {
  const Matrix P = predict_proba(X);
  std::vector<std::size_t> out(P.rows());
  for (std::size_t r = 0; r < P.rows(); ++r) out[r] = argmax(P.row(r));
  return out;
}

}  // namespace vrid::classifiers
