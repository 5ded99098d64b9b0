#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vrid/classifiers/model.hpp"

namespace vrid::classifiers {

struct QdaOptions {
  /// Diagonal loading factor: covariance += ridge * (trace / d) * I.
  double ridge = 1e-6;
};

/// Quadratic discriminant analysis: one full-covariance Gaussian per class,
/// uniform class prior.
class QdaModel final : public Model {
 public:
  /// `cholesky[k]` is the row-major d x d lower Cholesky factor of class k's
  /// loaded covariance.
  QdaModel(std::vector<std::string> labels, Matrix means, std::vector<std::vector<double>> cholesky,
           double ridge);

  ModelKind kind() const noexcept override { return ModelKind::Qda; }

  /// Gaussian log-density of x under each class.
  void log_densities(std::span<const double> x, std::span<double> out) const;

  const Matrix& means() const noexcept { return means_; }
  const std::vector<std::vector<double>>& cholesky_factors() const noexcept { return chol_; }

  nlohmann::json parameters() const override;
  static std::unique_ptr<QdaModel> from_parameters(std::vector<std::string> labels,
                                                   std::size_t n_features, std::uint64_t seed,
                                                   const nlohmann::json& params);

 protected:
  void compute_proba(std::span<const double> x, std::span<double> out) const override;

 private:
  Matrix means_;
  std::vector<std::vector<double>> chol_;
  std::vector<double> log_det_;
  double ridge_;
};

/// Throws FitError naming the user when a class has fewer than 2 rows.
std::unique_ptr<QdaModel> train_qda(const LabeledData& data, const QdaOptions& options = {});

}  // namespace vrid::classifiers
