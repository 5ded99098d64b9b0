#pragma once

#include <cstdint>
#include <json.hpp>
#include <span>
#include <vector>

#include "vrid/util/matrix.hpp"
#include "vrid/util/rng.hpp"

namespace vrid::classifiers {

/// Internal node when feature >= 0: go left iff x[feature] <= threshold.
/// Leaf when feature < 0: its outputs start at value_offset in the tree's
/// value array.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint32_t value_offset = 0;

  bool is_leaf() const noexcept { return feature < 0; }
};

/// Binary tree with a fixed-length output vector per leaf (class
/// distribution for classification, a single value for regression).
class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::vector<double> values, std::size_t n_outputs);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t n_outputs() const noexcept { return n_outputs_; }
  std::size_t leaf_count() const noexcept;

  std::size_t leaf_index(std::span<const double> x) const noexcept;
  std::span<const double> leaf_value(std::span<const double> x) const noexcept;

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

  friend bool operator==(const DecisionTree& a, const DecisionTree& b) noexcept;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<double> values_;
  std::size_t n_outputs_ = 0;
};

/// Column-major copy of X (features x samples) for cache-friendly split search.
Matrix transpose(const Matrix& X);

enum class SplitRule {
  Best,    // exhaustive Gini-optimal threshold per candidate feature
  Random,  // one uniform threshold in [min, max) per candidate feature
};

struct ClassificationTreeOptions {
  SplitRule rule = SplitRule::Best;
  std::size_t max_features = 0;  // candidates per node; 0 means ceil(sqrt(d))
  std::size_t min_samples_split = 2;
};

/// Grows a Gini classification tree on `samples` (row indices into Xt's
/// columns, duplicates allowed) until nodes are pure or too small. Candidate
/// features are drawn without replacement until max_features non-constant
/// ones have been evaluated; equal-impurity splits prefer the lowest feature
/// index, then the lowest threshold.
DecisionTree grow_classification_tree(const Matrix& Xt, std::span<const std::size_t> y,
                                      std::size_t n_classes, std::vector<std::size_t> samples,
                                      const ClassificationTreeOptions& options, CounterRng& rng);

}  // namespace vrid::classifiers
