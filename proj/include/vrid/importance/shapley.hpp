#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrid/classifiers/model.hpp"

namespace vrid::importance {

/// v(z): the game's payoff for a composite input z.
using ValueFunction = std::function<double(std::span<const double>)>;

struct ShapleyEstimate {
  std::vector<double> values;
  /// Standard error of each value across permutations (0 for exact).
  std::vector<double> std_error;
  double v_instance = 0.0;
  double v_baseline = 0.0;
  std::size_t n_permutations = 0;
};

/// Permutation sampling: each permutation walks the features in random
/// order, switching them from baseline to instance values and crediting each
/// feature with the change in v. Every other permutation is the reverse of
/// the one before it, which cancels pairwise interaction noise. Features with x_j == b_j are
/// credited 0 without evaluating v. Throws ArgumentError on a length mismatch or n_permutations ==
/// 0.
ShapleyEstimate shapley_monte_carlo(const ValueFunction& v, std::span<const double> x,
                                    std::span<const double> baseline, std::size_t n_permutations,
                                    std::uint64_t seed);

/// Average over all d! orderings. Throws ArgumentError when d > 9.
ShapleyEstimate shapley_exact(const ValueFunction& v, std::span<const double> x,
                              std::span<const double> baseline);

inline constexpr std::size_t kMaxExactFeatures = 9;

/// Column means of X.
std::vector<double> column_means(const Matrix& X);

struct AttributionOptions {
  std::size_t n_permutations = 200;
  /// Instances per label; larger classes are thinned to evenly spaced picks.
  std::size_t max_instances_per_label = 50;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct AttributionResult {
  std::vector<std::string> names;
  /// Mean over instances of each feature's Shapley value.
  std::vector<double> values;
  std::size_t n_instances = 0;
  std::size_t n_permutations = 0;
  std::string baseline = "training mean";
};

/// Value function: the model's probability for the instance's true label,
/// with features outside the coalition held at `baseline`. Instance i draws
/// its permutations from derive_seed(seed, i) over the selected instances.
AttributionResult shapley_attribution(const classifiers::Model& model, const Matrix& X_test,
                                      std::span<const std::size_t> y_test,
                                      std::span<const double> baseline,
                                      const std::vector<std::string>& names,
                                      const AttributionOptions& options = {});

/// Indices of the instances shapley_attribution evaluates.
std::vector<std::size_t> select_instances(std::span<const std::size_t> y, std::size_t n_labels,
                                          std::size_t max_per_label);

/// Descending by |value|, ties by name. Throws ArgumentError when k is 0 or
/// exceeds the feature count.
std::vector<std::pair<std::string, double>> top_k_features(const AttributionResult& result,
                                                           std::size_t k);

/// feature,mean_shapley,rank (rank 1 = largest |value|).
std::string attribution_csv(const AttributionResult& result);

/// Rows are the union of each game's top-k features; per game a value and
/// a rank column, empty when the feature is outside that game's top k.
std::string top_k_table_csv(const std::vector<std::pair<std::string, AttributionResult>>& per_game,
                            std::size_t k);

}  // namespace vrid::importance
