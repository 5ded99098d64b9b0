#include "vrid/classifiers/qda.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "vrid/error.hpp"

namespace vrid::classifiers {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double log_det_from_cholesky(const std::vector<double>& L, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::log(L[i * d + i]);
  return 2.0 * s;
}

}  // namespace

QdaModel::QdaModel(std::vector<std::string> labels, Matrix means,
                   std::vector<std::vector<double>> cholesky, double ridge)
    : Model(std::move(labels), means.cols(), 0),
      means_(std::move(means)),
      chol_(std::move(cholesky)),
      ridge_(ridge) {
  const std::size_t d = means_.cols();
  if (chol_.size() != means_.rows()) throw ArgumentError("qda: factor count != class count");
  for (const auto& L : chol_) {
    if (L.size() != d * d) throw ArgumentError("qda: factor has wrong size");
    log_det_.push_back(log_det_from_cholesky(L, d));
  }
}

void QdaModel::log_densities(std::span<const double> x, std::span<double> out) const {
  const std::size_t d = n_features();
  if (x.size() != d || out.size() != n_classes()) {
    throw ArgumentError("log_densities: dimension mismatch");
  }
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  Eigen::VectorXd diff(d);
  for (std::size_t k = 0; k < n_classes(); ++k) {
    for (std::size_t j = 0; j < d; ++j) diff[j] = x[j] - means_(k, j);
    Eigen::Map<const RowMajor> L(chol_[k].data(), d, d);
    L.triangularView<Eigen::Lower>().solveInPlace(diff);
    out[k] = -0.5 * (static_cast<double>(d) * log_2pi + log_det_[k] + diff.squaredNorm());
  }
}

void QdaModel::compute_proba(std::span<const double> x, std::span<double> out) const {
  log_densities(x, out);
  double mx = out[0];
  for (double v : out) mx = std::max(mx, v);
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - mx);
    total += v;
  }
  for (double& v : out) v /= total;
}

nlohmann::json QdaModel::parameters() const {
  nlohmann::json p;
  p["ridge"] = ridge_;
  p["means"] = nlohmann::json::array();
  for (std::size_t k = 0; k < means_.rows(); ++k) {
    p["means"].push_back(std::vector<double>(means_.row(k).begin(), means_.row(k).end()));
  }
  p["cholesky"] = chol_;
  return p;
}

std::unique_ptr<QdaModel> QdaModel::from_parameters(std::vector<std::string> labels,
                                                    std::size_t n_features, std::uint64_t,
                                                    const nlohmann::json& p) {
  const auto& rows = p.at("means");
  if (rows.size() != labels.size()) throw ArgumentError("qda: mean rows != label count");
  Matrix means(labels.size(), n_features);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto row = rows[k].get<std::vector<double>>();
    if (row.size() != n_features) throw ArgumentError("qda: mean row length mismatch");
    std::copy(row.begin(), row.end(), means.row(k).begin());
  }
  return std::make_unique<QdaModel>(std::move(labels), std::move(means),
                                    p.at("cholesky").get<std::vector<std::vector<double>>>(),
                                    p.at("ridge").get<double>());
}

std::unique_ptr<QdaModel> train_qda(const LabeledData& data, const QdaOptions& options) {
  check_training_data(data, "train_qda");
  const std::size_t K = data.labels.size(), d = data.X.cols();
  std::vector<std::vector<std::size_t>> rows(K);
  for (std::size_t i = 0; i < data.y.size(); ++i) rows[data.y[i]].push_back(i);

  Matrix means(K, d);
  std::vector<std::vector<double>> factors(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& idx = rows[k];
    if (idx.size() < 2) {
      throw FitError("train_qda: user '" + data.labels[k] + "' has " + std::to_string(idx.size()) +
                     " training windows, need >= 2");
    }
    const double n = static_cast<double>(idx.size());
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
    for (auto i : idx) mu += Eigen::Map<const Eigen::VectorXd>(data.X.row(i).data(), d);
    mu /= n;
    RowMajor centered(idx.size(), d);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      centered.row(r) =
          Eigen::Map<const Eigen::RowVectorXd>(data.X.row(idx[r]).data(), d) - mu.transpose();
    }
    Eigen::MatrixXd cov = (centered.transpose() * centered) / (n - 1.0);
    const double avg_var = cov.trace() / static_cast<double>(d);
    double loading = options.ridge * (avg_var > 0.0 ? avg_var : 1.0);

    Eigen::LLT<Eigen::MatrixXd> llt;
    for (int attempt = 0;; ++attempt) {
      Eigen::MatrixXd loaded = cov;
      loaded.diagonal().array() += loading;
      llt.compute(loaded);
      if (llt.info() == Eigen::Success) break;
      if (attempt >= 8) {
        throw FitError("train_qda: covariance of user '" + data.labels[k] +
                       "' is not positive definite after loading");
      }
      loading *= 10.0;
    }
    RowMajor L = llt.matrixL();
    factors[k].assign(L.data(), L.data() + d * d);
    for (std::size_t j = 0; j < d; ++j) means(k, j) = mu[j];
  }
  return std::make_unique<QdaModel>(data.labels, std::move(means), std::move(factors),
                                    options.ridge);
}

}  // namespace vrid::classifiers
