#include "vrid/classifiers/logistic.hpp"

#include <cmath>

#include "vrid/classifiers/optim.hpp"
#include "vrid/error.hpp"
#include "vrid/simd/kernels.hpp"
#include "vrid/util/log.hpp"
#include "vrid/util/parallel.hpp"

namespace vrid::classifiers {
namespace {

double softplus(double a) { return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a))); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double binary_logistic_objective(const Matrix& X, std::span<const double> targets, double lambda,
                                 std::span<const double> params, std::span<double> grad) {
  const std::size_t n = X.rows(), d = X.cols();
  const auto w = params.first(d);
  const double b = params[d];
  auto gw = grad.first(d);
  for (std::size_t j = 0; j < d; ++j) gw[j] = 0.0;
  double gb = 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = simd::dot(X.row(i), w) + b;
    loss += targets[i] > 0.5 ? softplus(-z) : softplus(z);
    const double r = sigmoid(z) - targets[i];
    simd::axpy(r, X.row(i), gw);
    gb += r;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) gw[j] = gw[j] * inv_n + lambda * w[j];
  grad[d] = gb * inv_n;
  return loss * inv_n + 0.5 * lambda * simd::dot(w, w);
}

LogisticModel::LogisticModel(std::vector<std::string> labels, std::uint64_t seed, Matrix weights,
                             std::vector<double> bias, std::vector<bool> converged, double lambda)
    : Model(std::move(labels), weights.cols(), seed),
      weights_(std::move(weights)),
      bias_(std::move(bias)),
      converged_(std::move(converged)),
      lambda_(lambda) {}

bool LogisticModel::converged() const noexcept {
  for (bool c : converged_) {
    if (!c) return false;
  }
  return true;
}

void LogisticModel::decision_scores(std::span<const double> x, std::span<double> out) const {
  if (x.size() != n_features() || out.size() != n_classes()) {
    throw ArgumentError("decision_scores: dimension mismatch");
  }
  for (std::size_t k = 0; k < n_classes(); ++k) out[k] = simd::dot(weights_.row(k), x) + bias_[k];
}

void LogisticModel::compute_proba(std::span<const double> x, std::span<double> out) const {
  double total = 0.0;
  for (std::size_t k = 0; k < n_classes(); ++k) {
    out[k] = sigmoid(simd::dot(weights_.row(k), x) + bias_[k]);
    total += out[k];
  }
  if (total > 0.0) {
    for (double& p : out) p /= total;
  } else {
    for (double& p : out) p = 1.0 / static_cast<double>(n_classes());
  }
}

nlohmann::json LogisticModel::parameters() const {
  nlohmann::json p;
  p["lambda"] = lambda_;
  p["weights"] = nlohmann::json::array();
  for (std::size_t k = 0; k < weights_.rows(); ++k) {
    p["weights"].push_back(std::vector<double>(weights_.row(k).begin(), weights_.row(k).end()));
  }
  p["bias"] = bias_;
  p["converged"] = converged_;
  return p;
}

std::unique_ptr<LogisticModel> LogisticModel::from_parameters(std::vector<std::string> labels,
                                                              std::size_t n_features,
                                                              std::uint64_t seed,
                                                              const nlohmann::json& p) {
  Matrix w(labels.size(), n_features);
  const auto& rows = p.at("weights");
  if (rows.size() != labels.size()) throw ArgumentError("lr: weight rows != label count");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto row = rows[k].get<std::vector<double>>();
    if (row.size() != n_features) throw ArgumentError("lr: weight row length mismatch");
    std::copy(row.begin(), row.end(), w.row(k).begin());
  }
  auto bias = p.at("bias").get<std::vector<double>>();
  auto conv = p.at("converged").get<std::vector<bool>>();
  if (bias.size() != labels.size() || conv.size() != labels.size()) {
    throw ArgumentError("lr: bias/converged length mismatch");
  }
  return std::make_unique<LogisticModel>(std::move(labels), seed, std::move(w), std::move(bias),
                                         std::move(conv), p.at("lambda").get<double>());
}

std::unique_ptr<LogisticModel> train_logistic_ovr(const LabeledData& data,
                                                  const LogisticOptions& options) {
  check_training_data(data, "train_logistic_ovr");
  const std::size_t K = data.labels.size(), d = data.X.cols();
  Matrix weights(K, d);
  std::vector<double> bias(K);
  std::vector<char> converged(K, 0);

  parallel_for(K, options.jobs, [&](std::size_t k) {
    std::vector<double> targets(data.y.size());
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = data.y[i] == k ? 1.0 : 0.0;
    Objective f = [&](std::span<const double> x, std::span<double> g) {
      return binary_logistic_objective(data.X, targets, options.lambda, x, g);
    };
    LbfgsOptions lb;
    lb.grad_tol = options.tol;
    lb.max_iter = options.max_iter;
    const LbfgsResult r = lbfgs_minimize(f, std::vector<double>(d + 1, 0.0), lb);
    std::copy(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(d), weights.row(k).begin());
    bias[k] = r.x[d];
    converged[k] = r.converged ? 1 : 0;
    if (!r.converged) {
      log::warning("logistic class '" + data.labels[k] + "' stopped at gradient norm " +
                   std::to_string(r.grad_norm));
    }
  });
  return std::make_unique<LogisticModel>(data.labels, 0, std::move(weights), std::move(bias),
                                         std::vector<bool>(converged.begin(), converged.end()),
                                         options.lambda);
}

}  // namespace vrid::classifiers
