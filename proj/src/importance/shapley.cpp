#include "vrid/importance/shapley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vrid/error.hpp"
#include "vrid/util/format.hpp"
#include "vrid/util/parallel.hpp"
#include "vrid/util/rng.hpp"

namespace vrid::importance {
namespace {

void check_inputs(std::span<const double> x, std::span<const double> baseline) {
  if (x.size() != baseline.size()) {
    throw ArgumentError("shapley: baseline length " + std::to_string(baseline.size()) +
                        " != instance length " + std::to_string(x.size()));
  }
}

// Credits each feature with its marginal change along one ordering.
void walk(const ValueFunction& v, std::span<const double> x, std::span<const double> baseline,
          std::span<const std::size_t> order, double v_baseline, std::vector<double>& z,
          std::span<double> contrib) {
  std::copy(baseline.begin(), baseline.end(), z.begin());
  double prev = v_baseline;
  for (std::size_t j : order) {
    if (x[j] == baseline[j]) {
      contrib[j] = 0.0;
      continue;
    }
    z[j] = x[j];
    const double cur = v(z);
    contrib[j] = cur - prev;
    prev = cur;
  }
}

}  // namespace

ShapleyEstimate shapley_monte_carlo(const ValueFunction& v, std::span<const double> x,
                                    std::span<const double> baseline, std::size_t n_permutations,
                                    std::uint64_t seed) {
  check_inputs(x, baseline);
  if (n_permutations == 0) throw ArgumentError("shapley: n_permutations must be >= 1");
  const std::size_t d = x.size();
  ShapleyEstimate est;
  est.n_permutations = n_permutations;
  est.v_baseline = v(baseline);
  est.v_instance = v(x);
  // Orderings come in antithetic pairs (a shuffle, then its reverse); the
  // standard error treats each pair as one sample.
  std::vector<double> sum(d), sum_sq(d), unit(d), contrib(d), z(d);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed);
  std::size_t units = 0;
  for (std::size_t p = 0; p < n_permutations; p += 2) {
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    walk(v, x, baseline, order, est.v_baseline, z, unit);
    std::size_t walks = 1;
    if (p + 1 < n_permutations) {
      std::reverse(order.begin(), order.end());
      walk(v, x, baseline, order, est.v_baseline, z, contrib);
      for (std::size_t j = 0; j < d; ++j) unit[j] += contrib[j];
      walks = 2;
    }
    for (std::size_t j = 0; j < d; ++j) {
      sum[j] += unit[j];
      const double mean = unit[j] / static_cast<double>(walks);
      sum_sq[j] += mean * mean;
    }
    ++units;
  }
  const double n = static_cast<double>(n_permutations);
  const double u = static_cast<double>(units);
  est.values.resize(d);
  est.std_error.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    est.values[j] = sum[j] / n;
    if (units > 1) {
      const double var = std::max(0.0, (sum_sq[j] - u * est.values[j] * est.values[j]) / (u - 1.0));
      est.std_error[j] = std::sqrt(var / u);
    }
  }
  return est;
}

ShapleyEstimate shapley_exact(const ValueFunction& v, std::span<const double> x,
                              std::span<const double> baseline) {
  check_inputs(x, baseline);
  const std::size_t d = x.size();
  if (d > kMaxExactFeatures) {
    throw ArgumentError("shapley_exact supports at most " + std::to_string(kMaxExactFeatures) +
                        " features");
  }
  ShapleyEstimate est;
  est.v_baseline = v(baseline);
  est.v_instance = v(x);
  est.values.assign(d, 0.0);
  est.std_error.assign(d, 0.0);
  std::vector<double> contrib(d), z(d);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::size_t count = 0;
  do {
    walk(v, x, baseline, order, est.v_baseline, z, contrib);
    for (std::size_t j = 0; j < d; ++j) est.values[j] += contrib[j];
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& s : est.values) s /= static_cast<double>(count);
  est.n_permutations = count;
  return est;
}

std::vector<double> column_means(const Matrix& X) {
  if (X.rows() == 0) throw ArgumentError("column_means: empty matrix");
  std::vector<double> m(X.cols(), 0.0);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < X.cols(); ++c) m[c] += X(r, c);
  }
  for (double& v : m) v /= static_cast<double>(X.rows());
  return m;
}

std::vector<std::size_t> select_instances(std::span<const std::size_t> y, std::size_t n_labels,
                                          std::size_t max_per_label) {
  std::vector<std::vector<std::size_t>> by_label(n_labels);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= n_labels) throw ArgumentError("select_instances: label out of range");
    by_label[y[i]].push_back(i);
  }
  std::vector<std::size_t> out;
  for (const auto& idx : by_label) {
    const std::size_t m = std::min(idx.size(), max_per_label);
    for (std::size_t i = 0; i < m; ++i) out.push_back(idx[i * idx.size() / m]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AttributionResult shapley_attribution(const classifiers::Model& model, const Matrix& X_test,
                                      std::span<const std::size_t> y_test,
                                      std::span<const double> baseline,
                                      const std::vector<std::string>& names,
                                      const AttributionOptions& options) {
  const std::size_t d = model.n_features();
  if (baseline.size() != d) {
    throw ArgumentError("shapley_attribution: baseline length " + std::to_string(baseline.size()) +
                        " != feature count " + std::to_string(d));
  }
  if (X_test.cols() != d || names.size() != d) {
    throw ArgumentError("shapley_attribution: test matrix or names do not match the model");
  }
  if (X_test.rows() != y_test.size()) {
    throw ArgumentError("shapley_attribution: X_test rows != y_test length");
  }
  const auto picks = select_instances(y_test, model.n_classes(), options.max_instances_per_label);
  if (picks.empty()) throw ArgumentError("shapley_attribution: no instances");

  std::vector<std::vector<double>> per_instance(picks.size());
  parallel_for(picks.size(), options.jobs, [&](std::size_t i) {
    const std::size_t row = picks[i];
    const std::size_t label = y_test[row];
    std::vector<double> proba(model.n_classes());
    const ValueFunction v = [&](std::span<const double> z) {
      model.predict_proba(z, proba);
      return proba[label];
    };
    per_instance[i] = shapley_monte_carlo(v, X_test.row(row), baseline, options.n_permutations,
                                          derive_seed(options.seed, i))
                          .values;
  });
  AttributionResult result;
  result.names = names;
  result.values.assign(d, 0.0);
  for (const auto& vals : per_instance) {
    for (std::size_t j = 0; j < d; ++j) result.values[j] += vals[j];
  }
  for (double& v : result.values) v /= static_cast<double>(picks.size());
  result.n_instances = picks.size();
  result.n_permutations = options.n_permutations;
  return result;
}

namespace {

std::vector<std::size_t> ranking(const AttributionResult& r) {
  std::vector<std::size_t> idx(r.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(r.values[a]), fb = std::abs(r.values[b]);
    if (fa != fb) return fa > fb;
    return r.names[a] < r.names[b];
  });
  return idx;
}

}  // namespace

std::vector<std::pair<std::string, double>> top_k_features(const AttributionResult& result,
                                                           std::size_t k) {
  if (result.names.size() != result.values.size()) {
    throw ArgumentError("top_k_features: names and values differ in length");
  }
  if (k == 0 || k > result.values.size()) {
    throw ArgumentError("top_k_features: k must be in [1, " + std::to_string(result.values.size()) +
                        "], got " + std::to_string(k));
  }
  std::vector<std::pair<std::string, double>> out;
  const auto idx = ranking(result);
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(result.names[idx[i]], result.values[idx[i]]);
  return out;
}

std::string attribution_csv(const AttributionResult& result) {
  std::string out = "feature,mean_shapley,rank\n";
  const auto idx = ranking(result);
  std::vector<std::size_t> rank(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = i + 1;
  for (std::size_t j = 0; j < result.values.size(); ++j) {
    out += result.names[j];
    out += ',';
    append_shortest(out, result.values[j]);
    out += ',' + std::to_string(rank[j]) + '\n';
  }
  return out;
}

std::string top_k_table_csv(const std::vector<std::pair<std::string, AttributionResult>>& per_game,
                            std::size_t k) {
  std::vector<std::vector<std::pair<std::string, double>>> tops;
  std::vector<std::string> rows;
  for (const auto& [game, result] : per_game) {
    tops.push_back(top_k_features(result, k));
    for (const auto& [name, value] : tops.back()) {
      if (std::find(rows.begin(), rows.end(), name) == rows.end()) rows.push_back(name);
    }
  }
  std::string out = "feature";
  for (const auto& [game, result] : per_game) out += ',' + game + ',' + game + ".rank";
  out += '\n';
  for (const auto& name : rows) {
    out += name;
    for (std::size_t g = 0; g < per_game.size(); ++g) {
      const auto& top = tops[g];
      const auto it =
          std::find_if(top.begin(), top.end(), [&](const auto& p) { return p.first == name; });
      if (it == top.end()) {
        out += ",,";
      } else {
        out += ',';
        append_shortest(out, it->second);
        out += ',' + std::to_string(it - top.begin() + 1);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace vrid::importance
