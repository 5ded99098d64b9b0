#pragma once

#include <memory>
#include <vector>

#include "vrid/classifiers/model.hpp"
#include "vrid/classifiers/tree.hpp"

namespace vrid::classifiers {

struct GbmOptions {
  std::size_t n_rounds = 100;
  double learning_rate = 0.1;
  std::size_t max_leaves = 31;
  std::size_t min_samples_leaf = 5;
  double min_sum_hessian = 1e-3;
  double lambda_l2 = 0.0;
  std::size_t jobs = 1;  // parallel per-class trees within a round
};

/// Multiclass gradient boosting on softmax log-loss. Tree (r, k) holds the
/// round-r contribution to class k, learning rate already applied.
class GbmModel final : public Model {
 public:
  GbmModel(std::vector<std::string> labels, std::size_t n_features, std::uint64_t seed,
           std::vector<std::vector<DecisionTree>> rounds, std::vector<double> training_loss);

  ModelKind kind() const noexcept override { return ModelKind::Gbm; }

  /// Accumulated raw scores per class.
  void decision_scores(std::span<const double> x, std::span<double> out) const;

  const std::vector<std::vector<DecisionTree>>& rounds() const noexcept { return rounds_; }
  /// Mean training log-loss before boosting and after each round.
  const std::vector<double>& training_loss() const noexcept { return training_loss_; }

  nlohmann::json parameters() const override;
  static std::unique_ptr<GbmModel> from_parameters(std::vector<std::string> labels,
                                                   std::size_t n_features, std::uint64_t seed,
                                                   const nlohmann::json& params);

 protected:
  void compute_proba(std::span<const double> x, std::span<double> out) const override;

 private:
  std::vector<std::vector<DecisionTree>> rounds_;
  std::vector<double> training_loss_;
};

/// In-place softmax.
void softmax(std::span<double> scores) noexcept;

/// Leaf-wise second-order regression tree on gradients g and hessians h:
/// gain GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l), leaf value -G/(H+l) * scale.
/// `order` holds, per feature, all row indices sorted by that feature.
DecisionTree grow_gradient_tree(const Matrix& Xt, const std::vector<std::uint32_t>& order,
                                std::span<const double> g, std::span<const double> h,
                                const GbmOptions& options, double scale);

/// Per-feature argsort of Xt's rows (ties by row index), concatenated.
std::vector<std::uint32_t> presort_columns(const Matrix& Xt);

std::unique_ptr<GbmModel> train_gbm(const LabeledData& data, const GbmOptions& options = {},
                                    std::uint64_t seed = 0);

}  // namespace vrid::classifiers
