#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vrid/util/matrix.hpp"

namespace vrid::classifiers {

enum class ModelKind { LogisticRegression, Qda, RandomForest, ExtraTrees, Gbm, Ensemble };

/// "lr", "qda", "rf", "extra_trees", "gbm", "ensemble".
std::string_view to_string(ModelKind kind) noexcept;
/// Throws ArgumentError on an unknown name.
ModelKind parse_model_kind(std::string_view name);

/// Integer-coded training labels: y[i] indexes into `labels`.
struct LabeledData {
  const Matrix& X;
  std::span<const std::size_t> y;
  const std::vector<std::string>& labels;
};

/// Validates shapes, label range, finiteness and that >= 2 labels exist.
void check_training_data(const LabeledData& data, std::string_view who);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values) noexcept;

/// A fitted, immutable classifier producing a probability per label.
class Model {
 public:
  virtual ~Model() = default;

  virtual ModelKind kind() const noexcept = 0;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t n_classes() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return n_features_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Writes one probability per label into `out`. Throws ArgumentError on a
  /// dimension mismatch.
  void predict_proba(std::span<const double> x, std::span<double> out) const;
  std::vector<double> predict_proba(std::span<const double> x) const;
  /// Row-stochastic matrix, one row per row of X.
  Matrix predict_proba(const Matrix& X) const;
  std::vector<std::size_t> predict(const Matrix& X) const;

  /// Kind-specific fitted parameters (see serialize.hpp for the envelope).
  virtual nlohmann::json parameters() const = 0;

 protected:
  Model(std::vector<std::string> labels, std::size_t n_features, std::uint64_t seed)
      : labels_(std::move(labels)), n_features_(n_features), seed_(seed) {}

  /// x and out already have the right sizes.
  virtual void compute_proba(std::span<const double> x, std::span<double> out) const = 0;

 private:
  std::vector<std::string> labels_;
  std::size_t n_features_;
  std::uint64_t seed_;
};

using ModelPtr = std::shared_ptr<const Model>;

}  // namespace vrid::classifiers
