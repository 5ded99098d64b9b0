#include "vrid/classifiers/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vrid/error.hpp"

namespace vrid::classifiers {

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::vector<double> values,
                           std::size_t n_outputs)
    : nodes_(std::move(nodes)), values_(std::move(values)), n_outputs_(n_outputs) {}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::leaf_index(std::span<const double> x) const noexcept {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                       : n.right);
  }
  return i;
}

std::span<const double> DecisionTree::leaf_value(std::span<const double> x) const noexcept {
  return {values_.data() + nodes_[leaf_index(x)].value_offset, n_outputs_};
}

nlohmann::json DecisionTree::to_json() const {
  std::vector<std::int32_t> feature, left, right;
  std::vector<double> threshold;
  std::vector<std::uint32_t> offset;
  for (const auto& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    offset.push_back(n.value_offset);
  }
  return {
      {"n_outputs", n_outputs_}, {"feature", feature},     {"threshold", threshold}, {"left", left},
      {"right", right},          {"value_offset", offset}, {"values", values_}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  const auto feature = j.at("feature").get<std::vector<std::int32_t>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left").get<std::vector<std::int32_t>>();
  const auto right = j.at("right").get<std::vector<std::int32_t>>();
  const auto offset = j.at("value_offset").get<std::vector<std::uint32_t>>();
  auto values = j.at("values").get<std::vector<double>>();
  const auto n_outputs = j.at("n_outputs").get<std::size_t>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n || offset.size() != n ||
      n == 0) {
    throw ArgumentError("tree: inconsistent node arrays");
  }
  std::vector<TreeNode> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = {feature[i], threshold[i], left[i], right[i], offset[i]};
    if (nodes[i].is_leaf()) {
      if (offset[i] + n_outputs > values.size()) throw ArgumentError("tree: value out of range");
    } else if (left[i] <= 0 || right[i] <= 0 || static_cast<std::size_t>(left[i]) >= n ||
               static_cast<std::size_t>(right[i]) >= n) {
      throw ArgumentError("tree: child index out of range");
    }
  }
  return DecisionTree(std::move(nodes), std::move(values), n_outputs);
}

bool operator==(const DecisionTree& a, const DecisionTree& b) noexcept {
  if (a.n_outputs_ != b.n_outputs_ || a.values_ != b.values_ ||
      a.nodes_.size() != b.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left ||
        x.right != y.right || x.value_offset != y.value_offset) {
      return false;
    }
  }
  return true;
}

Matrix transpose(const Matrix& X) {
  Matrix T(X.cols(), X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < X.cols(); ++c) T(c, r) = X(r, c);
  }
  return T;
}

namespace {

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();  // n_L gini_L + n_R gini_R
};

double weighted_gini(std::span<const double> counts, double total) {
  if (total <= 0.0) return 0.0;
  double sq = 0.0;
  for (double c : counts) sq += c * c;
  return total - sq / total;
}

bool better(const Split& cand, const Split& best) {
  if (!best.found) return true;
  if (cand.impurity != best.impurity) return cand.impurity < best.impurity;
  if (cand.feature != best.feature) return cand.feature < best.feature;
  return cand.threshold < best.threshold;
}

class ClassificationTreeBuilder {
 public:
  ClassificationTreeBuilder(const Matrix& Xt, std::span<const std::size_t> y, std::size_t n_classes,
                            const ClassificationTreeOptions& options, CounterRng& rng)
      : Xt_(Xt), y_(y), k_(n_classes), options_(options), rng_(rng), features_(Xt.rows()) {
    for (std::size_t f = 0; f < features_.size(); ++f) features_[f] = f;
    max_features_ =
        options.max_features != 0
            ? std::min(options.max_features, features_.size())
            : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(features_.size()))));
    counts_.resize(k_);
    left_counts_.resize(k_);
  }

  DecisionTree grow(std::vector<std::size_t> samples) {
    samples_ = std::move(samples);
    struct Pending {
      std::size_t node, begin, end;
    };
    nodes_.clear();
    values_.clear();
    nodes_.push_back({});
    std::vector<Pending> stack{{0, 0, samples_.size()}};
    while (!stack.empty()) {
      const Pending p = stack.back();
      stack.pop_back();
      std::fill(counts_.begin(), counts_.end(), 0.0);
      for (std::size_t i = p.begin; i < p.end; ++i) counts_[y_[samples_[i]]] += 1.0;
      const std::size_t m = p.end - p.begin;
      const bool pure =
          std::count_if(counts_.begin(), counts_.end(), [](double c) { return c > 0.0; }) <= 1;
      Split split;
      if (!pure && m >= options_.min_samples_split) split = find_split(p.begin, p.end);
      if (!split.found) {
        make_leaf(p.node, m);
        continue;
      }
      const auto& col = Xt_.row(split.feature);
      auto mid = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(p.begin),
                                samples_.begin() + static_cast<std::ptrdiff_t>(p.end),
                                [&](std::size_t s) { return col[s] <= split.threshold; });
      const auto mid_index = static_cast<std::size_t>(mid - samples_.begin());
      const auto left = nodes_.size();
      nodes_.push_back({});
      nodes_.push_back({});
      TreeNode& n = nodes_[p.node];
      n.feature = static_cast<std::int32_t>(split.feature);
      n.threshold = split.threshold;
      n.left = static_cast<std::int32_t>(left);
      n.right = static_cast<std::int32_t>(left + 1);
      stack.push_back({left + 1, mid_index, p.end});
      stack.push_back({left, p.begin, mid_index});
    }
    return DecisionTree(std::move(nodes_), std::move(values_), k_);
  }

 private:
  void make_leaf(std::size_t node, std::size_t m) {
    nodes_[node].value_offset = static_cast<std::uint32_t>(values_.size());
    for (double c : counts_) values_.push_back(c / static_cast<double>(m));
  }

  Split find_split(std::size_t begin, std::size_t end) {
    Split best;
    const std::size_t d = features_.size();
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < d && evaluated < max_features_; ++i) {
      std::swap(features_[i], features_[i + rng_.below(d - i)]);
      const std::size_t f = features_[i];
      const Split cand = options_.rule == SplitRule::Best ? best_threshold(f, begin, end)
                                                          : random_threshold(f, begin, end);
      if (cand.impurity == kConstant) continue;
      ++evaluated;
      if (cand.found && better(cand, best)) best = cand;
    }
    return best;
  }

  static constexpr double kConstant = -1.0;

  Split best_threshold(std::size_t f, std::size_t begin, std::size_t end) {
    const auto col = Xt_.row(f);
    pairs_.clear();
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t s = samples_[i];
      pairs_.emplace_back(col[s], y_[s]);
    }
    std::sort(pairs_.begin(), pairs_.end());
    Split out;
    out.feature = f;
    if (pairs_.front().first == pairs_.back().first) {
      out.impurity = kConstant;
      return out;
    }
    const double total = static_cast<double>(pairs_.size());
    std::fill(left_counts_.begin(), left_counts_.end(), 0.0);
    right_counts_ = counts_;
    for (std::size_t i = 0; i + 1 < pairs_.size(); ++i) {
      left_counts_[pairs_[i].second] += 1.0;
      right_counts_[pairs_[i].second] -= 1.0;
      const double v = pairs_[i].first, next = pairs_[i + 1].first;
      if (!(v < next)) continue;
      const double n_left = static_cast<double>(i + 1);
      const double imp =
          weighted_gini(left_counts_, n_left) + weighted_gini(right_counts_, total - n_left);
      if (!out.found || imp < out.impurity) {
        double thr = v + (next - v) / 2.0;
        if (!(thr < next)) thr = v;
        out.found = true;
        out.impurity = imp;
        out.threshold = thr;
      }
    }
    return out;
  }

  Split random_threshold(std::size_t f, std::size_t begin, std::size_t end) {
    const auto col = Xt_.row(f);
    double lo = col[samples_[begin]], hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double v = col[samples_[i]];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    Split out;
    out.feature = f;
    if (!(lo < hi)) {
      out.impurity = kConstant;
      return out;
    }
    const double thr = rng_.uniform(lo, hi);
    std::fill(left_counts_.begin(), left_counts_.end(), 0.0);
    double n_left = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t s = samples_[i];
      if (col[s] <= thr) {
        left_counts_[y_[s]] += 1.0;
        n_left += 1.0;
      }
    }
    right_counts_ = counts_;
    for (std::size_t c = 0; c < k_; ++c) right_counts_[c] -= left_counts_[c];
    const double total = static_cast<double>(end - begin);
    out.found = true;
    out.threshold = thr;
    out.impurity =
        weighted_gini(left_counts_, n_left) + weighted_gini(right_counts_, total - n_left);
    return out;
  }

  const Matrix& Xt_;
  std::span<const std::size_t> y_;
  std::size_t k_;
  const ClassificationTreeOptions& options_;
  CounterRng& rng_;
  std::vector<std::size_t> features_;
  std::size_t max_features_ = 1;
  std::vector<std::size_t> samples_;
  std::vector<TreeNode> nodes_;
  std::vector<double> values_;
  std::vector<double> counts_, left_counts_, right_counts_;
  std::vector<std::pair<double, std::size_t>> pairs_;
};

}  // namespace

DecisionTree grow_classification_tree(const Matrix& Xt, std::span<const std::size_t> y,
                                      std::size_t n_classes, std::vector<std::size_t> samples,
                                      const ClassificationTreeOptions& options, CounterRng& rng) {
  if (samples.empty()) throw ArgumentError("grow_classification_tree: no samples");
  ClassificationTreeBuilder builder(Xt, y, n_classes, options, rng);
  return builder.grow(std::move(samples));
}

}  // namespace vrid::classifiers
