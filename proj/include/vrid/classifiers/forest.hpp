#pragma once

#include <memory>
#include <vector>

#include "vrid/classifiers/model.hpp"
#include "vrid/classifiers/tree.hpp"

namespace vrid::classifiers {

struct ForestOptions {
  std::size_t n_trees = 100;
  bool bootstrap = true;
  SplitRule rule = SplitRule::Best;
  std::size_t max_features = 0;  // 0 means ceil(sqrt(d))
  std::size_t min_samples_split = 2;
  std::size_t jobs = 1;  // parallel tree growth
};

ForestOptions random_forest_defaults();
ForestOptions extra_trees_defaults();

/// Averages the leaf class distributions of its trees.
class ForestModel final : public Model {
 public:
  ForestModel(ModelKind kind, std::vector<std::string> labels, std::size_t n_features,
              std::uint64_t seed, std::vector<DecisionTree> trees);

  ModelKind kind() const noexcept override { return kind_; }
  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }

  nlohmann::json parameters() const override;
  static std::unique_ptr<ForestModel> from_parameters(ModelKind kind,
                                                      std::vector<std::string> labels,
                                                      std::size_t n_features, std::uint64_t seed,
                                                      const nlohmann::json& params);

 protected:
  void compute_proba(std::span<const double> x, std::span<double> out) const override;

 private:
  ModelKind kind_;
  std::vector<DecisionTree> trees_;
};

/// Tree t draws from the stream derive_seed(seed, t), so results do not
/// depend on the number of jobs.
std::unique_ptr<ForestModel> train_forest(ModelKind kind, const LabeledData& data,
                                          const ForestOptions& options, std::uint64_t seed);

std::unique_ptr<ForestModel> train_random_forest(const LabeledData& data, std::uint64_t seed,
                                                 ForestOptions options = random_forest_defaults());
std::unique_ptr<ForestModel> train_extra_trees(const LabeledData& data, std::uint64_t seed,
                                               ForestOptions options = extra_trees_defaults());

}  // namespace vrid::classifiers
