#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vrid/classifiers/model.hpp"

namespace vrid::classifiers {

struct LogisticOptions {
  double lambda = 1.0;  // Tikhonov weight on ||w||^2 / 2; bias is not penalized
  double tol = 1e-6;    // gradient-norm target
  std::size_t max_iter = 1000;
  std::size_t jobs = 1;  // parallel one-vs-rest problems
};

/// Mean binary log-loss + lambda / 2 ||w||^2 with params = (w_0 .. w_{d-1}, b).
/// `targets` are 0/1. Writes the analytic gradient into `grad`.
double binary_logistic_objective(const Matrix& X, std::span<const double> targets, double lambda,
                                 std::span<const double> params, std::span<double> grad);

/// One-vs-rest regularized logistic regression. Probabilities are the
/// per-class sigmoid scores normalized to sum to one.
class LogisticModel final : public Model {
 public:
  LogisticModel(std::vector<std::string> labels, std::uint64_t seed, Matrix weights,
                std::vector<double> bias, std::vector<bool> converged, double lambda);

  ModelKind kind() const noexcept override { return ModelKind::LogisticRegression; }

  /// Per-class margins w_k . x + b_k.
  void decision_scores(std::span<const double> x, std::span<double> out) const;

  const Matrix& weights() const noexcept { return weights_; }
  const std::vector<double>& bias() const noexcept { return bias_; }
  /// Per-class flag: the optimizer reached the gradient tolerance.
  const std::vector<bool>& class_converged() const noexcept { return converged_; }
  bool converged() const noexcept;

  nlohmann::json parameters() const override;
  static std::unique_ptr<LogisticModel> from_parameters(std::vector<std::string> labels,
                                                        std::size_t n_features, std::uint64_t seed,
                                                        const nlohmann::json& params);

 protected:
  void compute_proba(std::span<const double> x, std::span<double> out) const override;

 private:
  Matrix weights_;  // classes x features
  std::vector<double> bias_;
  std::vector<bool> converged_;
  double lambda_;
};

/// Throws ArgumentError on fewer than 2 labels or non-finite features.
/// Non-convergence is recorded in class_converged(), not thrown.
std::unique_ptr<LogisticModel> train_logistic_ovr(const LabeledData& data,
                                                  const LogisticOptions& options = {});

}  // namespace vrid::classifiers
