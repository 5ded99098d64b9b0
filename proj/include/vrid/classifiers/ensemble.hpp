#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vrid/classifiers/model.hpp"

namespace vrid::classifiers {

/// Unweighted mean of the members' probability vectors.
class EnsembleModel final : public Model {
 public:
  /// Throws ArgumentError when members are empty or disagree on labels or
  /// feature count.
  explicit EnsembleModel(std::vector<ModelPtr> members, std::uint64_t seed = 0);

  ModelKind kind() const noexcept override { return ModelKind::Ensemble; }
  const std::vector<ModelPtr>& members() const noexcept { return members_; }

  nlohmann::json parameters() const override;

 protected:
  void compute_proba(std::span<const double> x, std::span<double> out) const override;

 private:
  std::vector<ModelPtr> members_;
};

/// Mean of the models' probabilities for x.
std::vector<double> ensemble_soft_vote(std::span<const ModelPtr> models, std::span<const double> x);

}  // namespace vrid::classifiers
