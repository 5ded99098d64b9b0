#include "vrid/classifiers/forest.hpp"

#include <algorithm>

#include "vrid/error.hpp"
#include "vrid/util/parallel.hpp"
#include "vrid/util/rng.hpp"

namespace vrid::classifiers {

ForestOptions random_forest_defaults() { return {}; }

ForestOptions extra_trees_defaults() {
  ForestOptions o;
  o.n_trees = 800;
  o.bootstrap = false;
  o.rule = SplitRule::Random;
  return o;
}

ForestModel::ForestModel(ModelKind kind, std::vector<std::string> labels, std::size_t n_features,
                         std::uint64_t seed, std::vector<DecisionTree> trees)
    : Model(std::move(labels), n_features, seed), kind_(kind), trees_(std::move(trees)) {
  if (kind != ModelKind::RandomForest && kind != ModelKind::ExtraTrees) {
    throw ArgumentError("forest: kind must be rf or extra_trees");
  }
  if (trees_.empty()) throw ArgumentError("forest: no trees");
  for (const auto& t : trees_) {
    if (t.n_outputs() != n_classes()) throw ArgumentError("forest: tree output size mismatch");
    for (const auto& n : t.nodes()) {
      if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= n_features) {
        throw ArgumentError("forest: feature index out of range");
      }
    }
  }
}

void ForestModel::compute_proba(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : trees_) {
    const auto leaf = t.leaf_value(x);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += leaf[k];
  }
  const double inv = 1.0 / static_cast<double>(trees_.size());
  for (double& v : out) v *= inv;
}

nlohmann::json ForestModel::parameters() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.to_json());
  return {{"trees", std::move(trees)}};
}

std::unique_ptr<ForestModel> ForestModel::from_parameters(ModelKind kind,
                                                          std::vector<std::string> labels,
                                                          std::size_t n_features,
                                                          std::uint64_t seed,
                                                          const nlohmann::json& p) {
  std::vector<DecisionTree> trees;
  for (const auto& t : p.at("trees")) trees.push_back(DecisionTree::from_json(t));
  return std::make_unique<ForestModel>(kind, std::move(labels), n_features, seed, std::move(trees));
}

std::unique_ptr<ForestModel> train_forest(ModelKind kind, const LabeledData& data,
                                          const ForestOptions& options, std::uint64_t seed) {
  check_training_data(data, to_string(kind));
  if (options.n_trees == 0) throw ArgumentError("train_forest: n_trees must be >= 1");
  const Matrix Xt = transpose(data.X);
  const std::size_t n = data.X.rows();
  ClassificationTreeOptions tree_opts;
  tree_opts.rule = options.rule;
  tree_opts.max_features = options.max_features;
  tree_opts.min_samples_split = std::max<std::size_t>(options.min_samples_split, 2);

  std::vector<DecisionTree> trees(options.n_trees);
  parallel_for(options.n_trees, options.jobs, [&](std::size_t t) {
    CounterRng rng(derive_seed(seed, t));
    std::vector<std::size_t> samples(n);
    if (options.bootstrap) {
      for (auto& s : samples) s = static_cast<std::size_t>(rng.below(n));
    } else {
      for (std::size_t i = 0; i < n; ++i) samples[i] = i;
    }
    trees[t] = grow_classification_tree(Xt, data.y, data.labels.size(), std::move(samples),
                                        tree_opts, rng);
  });
  return std::make_unique<ForestModel>(kind, data.labels, data.X.cols(), seed, std::move(trees));
}

std::unique_ptr<ForestModel> train_random_forest(const LabeledData& data, std::uint64_t seed,
                                                 ForestOptions options) {
  return train_forest(ModelKind::RandomForest, data, options, seed);
}

std::unique_ptr<ForestModel> train_extra_trees(const LabeledData& data, std::uint64_t seed,
                                               ForestOptions options) {
  return train_forest(ModelKind::ExtraTrees, data, options, seed);
}

}  // namespace vrid::classifiers
