#include "vrid/classifiers/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vrid/error.hpp"
#include "vrid/util/parallel.hpp"

namespace vrid::classifiers {

GbmModel::GbmModel(std::vector<std::string> labels, std::size_t n_features, std::uint64_t seed,
                   std::vector<std::vector<DecisionTree>> rounds, std::vector<double> training_loss)
    : Model(std::move(labels), n_features, seed),
      rounds_(std::move(rounds)),
      training_loss_(std::move(training_loss)) {
  for (const auto& r : rounds_) {
    if (r.size() != n_classes()) throw ArgumentError("gbm: round tree count != class count");
    for (const auto& t : r) {
      if (t.n_outputs() != 1) throw ArgumentError("gbm: trees must have one output");
      for (const auto& n : t.nodes()) {
        if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= n_features) {
          throw ArgumentError("gbm: feature index out of range");
        }
      }
    }
  }
}

void GbmModel::decision_scores(std::span<const double> x, std::span<double> out) const {
  if (x.size() != n_features() || out.size() != n_classes()) {
    throw ArgumentError("decision_scores: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& r : rounds_) {
    for (std::size_t k = 0; k < r.size(); ++k) out[k] += r[k].leaf_value(x)[0];
  }
}

void softmax(std::span<double> s) noexcept {
  double mx = s[0];
  for (double v : s) mx = std::max(mx, v);
  double total = 0.0;
  for (double& v : s) {
    v = std::exp(v - mx);
    total += v;
  }
  for (double& v : s) v /= total;
}

void GbmModel::compute_proba(std::span<const double> x, std::span<double> out) const {
  decision_scores(x, out);
  softmax(out);
}

nlohmann::json GbmModel::parameters() const {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : rounds_) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : r) trees.push_back(t.to_json());
    rounds.push_back(std::move(trees));
  }
  return {{"rounds", std::move(rounds)}, {"training_loss", training_loss_}};
}

std::unique_ptr<GbmModel> GbmModel::from_parameters(std::vector<std::string> labels,
                                                    std::size_t n_features, std::uint64_t seed,
                                                    const nlohmann::json& p) {
  std::vector<std::vector<DecisionTree>> rounds;
  for (const auto& r : p.at("rounds")) {
    auto& trees = rounds.emplace_back();
    for (const auto& t : r) trees.push_back(DecisionTree::from_json(t));
  }
  return std::make_unique<GbmModel>(std::move(labels), n_features, seed, std::move(rounds),
                                    p.at("training_loss").get<std::vector<double>>());
}

std::vector<std::uint32_t> presort_columns(const Matrix& Xt) {
  const std::size_t d = Xt.rows(), n = Xt.cols();
  std::vector<std::uint32_t> order(d * n);
  for (std::size_t j = 0; j < d; ++j) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(j * n);
    std::iota(first, first + static_cast<std::ptrdiff_t>(n), 0u);
    const auto col = Xt.row(j);
    std::stable_sort(first, first + static_cast<std::ptrdiff_t>(n),
                     [&](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
  }
  return order;
}

namespace {

struct Candidate {
  bool found = false;
  double gain = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;
};

struct Leaf {
  std::size_t node;
  std::size_t begin, end;
  double G, H;
  Candidate split;
};

class GradientTreeBuilder {
 public:
  GradientTreeBuilder(const Matrix& Xt, const std::vector<std::uint32_t>& order,
                      std::span<const double> g, std::span<const double> h,
                      const GbmOptions& options, double scale)
      : Xt_(Xt),
        d_(Xt.rows()),
        n_(Xt.cols()),
        ord_(order),
        g_(g),
        h_(h),
        opt_(options),
        scale_(scale),
        goes_left_(n_),
        buffer_(n_) {}

  DecisionTree grow() {
    std::vector<Leaf> leaves;
    nodes_.push_back({});
    double G = 0.0, H = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      G += g_[i];
      H += h_[i];
    }
    leaves.push_back({0, 0, n_, G, H, {}});
    leaves.back().split = best_split(leaves.back());
    const std::size_t max_leaves = std::max<std::size_t>(opt_.max_leaves, 1);
    while (leaves.size() < max_leaves) {
      std::size_t best = leaves.size();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].split.found) continue;
        if (best == leaves.size() || leaves[i].split.gain > leaves[best].split.gain) best = i;
      }
      if (best == leaves.size()) break;
      Leaf parent = leaves[best];
      auto [left, right] = split_leaf(parent);
      left.split = best_split(left);
      right.split = best_split(right);
      leaves[best] = left;
      leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(best) + 1, right);
    }
    std::vector<double> values;
    for (const Leaf& l : leaves) {
      nodes_[l.node].value_offset = static_cast<std::uint32_t>(values.size());
      values.push_back(-l.G / (l.H + opt_.lambda_l2) * scale_);
    }
    return DecisionTree(std::move(nodes_), std::move(values), 1);
  }

 private:
  double score(double G, double H) const { return G * G / (H + opt_.lambda_l2); }

  Candidate best_split(const Leaf& leaf) const {
    Candidate best;
    const std::size_t m = leaf.end - leaf.begin;
    const std::size_t min_leaf = std::max<std::size_t>(opt_.min_samples_leaf, 1);
    if (m < 2 * min_leaf) return best;
    const double parent = score(leaf.G, leaf.H);
    for (std::size_t j = 0; j < d_; ++j) {
      const std::uint32_t* seg = ord_.data() + j * n_ + leaf.begin;
      const auto col = Xt_.row(j);
      if (col[seg[0]] == col[seg[m - 1]]) continue;
      double GL = 0.0, HL = 0.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        GL += g_[seg[i]];
        HL += h_[seg[i]];
        const std::size_t n_left = i + 1;
        if (n_left < min_leaf) continue;
        if (m - n_left < min_leaf) break;
        const double v = col[seg[i]], next = col[seg[i + 1]];
        if (!(v < next)) continue;
        const double HR = leaf.H - HL;
        if (HL < opt_.min_sum_hessian || HR < opt_.min_sum_hessian) continue;
        const double gain = score(GL, HL) + score(leaf.G - GL, HR) - parent;
        if (!(gain > 0.0)) continue;
        if (!best.found || gain > best.gain) {
          double thr = v + (next - v) / 2.0;
          if (!(thr < next)) thr = v;
          best = {true, gain, j, thr};
        }
      }
    }
    return best;
  }

  std::pair<Leaf, Leaf> split_leaf(const Leaf& leaf) {
    const Candidate& c = leaf.split;
    const auto col = Xt_.row(c.feature);
    const std::size_t m = leaf.end - leaf.begin;
    const std::uint32_t* split_seg = ord_.data() + c.feature * n_ + leaf.begin;
    std::size_t n_left = 0;
    double GL = 0.0, HL = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint32_t s = split_seg[i];
      const bool left = col[s] <= c.threshold;
      goes_left_[s] = left ? 1 : 0;
      if (left) {
        ++n_left;
        GL += g_[s];
        HL += h_[s];
      }
    }
    for (std::size_t j = 0; j < d_; ++j) {
      std::uint32_t* seg = ord_.data() + j * n_ + leaf.begin;
      std::size_t l = 0, r = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t s = seg[i];
        if (goes_left_[s]) {
          seg[l++] = s;
        } else {
          buffer_[r++] = s;
        }
      }
      std::copy(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(r), seg + l);
    }
    const std::size_t left_node = nodes_.size();
    nodes_.push_back({});
    nodes_.push_back({});
    TreeNode& node = nodes_[leaf.node];
    node.feature = static_cast<std::int32_t>(c.feature);
    node.threshold = c.threshold;
    node.left = static_cast<std::int32_t>(left_node);
    node.right = static_cast<std::int32_t>(left_node + 1);
    Leaf left{left_node, leaf.begin, leaf.begin + n_left, GL, HL, {}};
    Leaf right{left_node + 1, leaf.begin + n_left, leaf.end, leaf.G - GL, leaf.H - HL, {}};
    return {left, right};
  }

  const Matrix& Xt_;
  std::size_t d_, n_;
  std::vector<std::uint32_t> ord_;
  std::span<const double> g_, h_;
  const GbmOptions& opt_;
  double scale_;
  std::vector<TreeNode> nodes_;
  std::vector<char> goes_left_;
  std::vector<std::uint32_t> buffer_;
};

double mean_log_loss(const Matrix& P, std::span<const std::size_t> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    s -= std::log(std::max(P(i, y[i]), std::numeric_limits<double>::min()));
  }
  return s / static_cast<double>(y.size());
}

}  // namespace

DecisionTree grow_gradient_tree(const Matrix& Xt, const std::vector<std::uint32_t>& order,
                                std::span<const double> g, std::span<const double> h,
                                const GbmOptions& options, double scale) {
  if (order.size() != Xt.rows() * Xt.cols() || g.size() != Xt.cols() || h.size() != Xt.cols()) {
    throw ArgumentError("grow_gradient_tree: size mismatch");
  }
  return GradientTreeBuilder(Xt, order, g, h, options, scale).grow();
}

std::unique_ptr<GbmModel> train_gbm(const LabeledData& data, const GbmOptions& options,
                                    std::uint64_t seed) {
  check_training_data(data, "train_gbm");
  if (!(options.learning_rate > 0.0)) throw ArgumentError("train_gbm: learning_rate must be > 0");
  if (data.X.rows() > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("train_gbm: too many rows");
  }
  const std::size_t n = data.X.rows(), K = data.labels.size();
  const Matrix Xt = transpose(data.X);
  const auto order = presort_columns(Xt);

  Matrix F(n, K);
  Matrix P(n, K);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(F.row(i).begin(), F.row(i).end(), P.row(i).begin());
      softmax(P.row(i));
    }
  };
  refresh();
  std::vector<double> loss{mean_log_loss(P, data.y)};
  std::vector<std::vector<DecisionTree>> rounds;
  rounds.reserve(options.n_rounds);

  for (std::size_t r = 0; r < options.n_rounds; ++r) {
    std::vector<DecisionTree> trees(K);
    parallel_for(K, options.jobs, [&](std::size_t k) {
      std::vector<double> g(n), h(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double p = P(i, k);
        g[i] = p - (data.y[i] == k ? 1.0 : 0.0);
        h[i] = p * (1.0 - p);
      }
      trees[k] = grow_gradient_tree(Xt, order, g, h, options, options.learning_rate);
    });
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = data.X.row(i);
      for (std::size_t k = 0; k < K; ++k) F(i, k) += trees[k].leaf_value(x)[0];
    }
    refresh();
    loss.push_back(mean_log_loss(P, data.y));
    rounds.push_back(std::move(trees));
  }
  return std::make_unique<GbmModel>(data.labels, data.X.cols(), seed, std::move(rounds),
                                    std::move(loss));
}

}  // namespace vrid::classifiers
