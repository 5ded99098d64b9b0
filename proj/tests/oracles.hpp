#pragma once

// Reference implementations written independently of the library code.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "vrid/util/matrix.hpp"

namespace vrid::test {

// Inverse and determinant of a small symmetric matrix by cofactor expansion.
inline double det3(const std::vector<std::vector<double>>& a) {
  if (a.size() == 1) return a[0][0];
  if (a.size() == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline std::vector<std::vector<double>> minor_of(const std::vector<std::vector<double>>& a,
                                                 std::size_t r, std::size_t c) {
  std::vector<std::vector<double>> m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == r) continue;
    std::vector<double> row;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != c) row.push_back(a[i][j]);
    }
    m.push_back(row);
  }
  return m;
}

inline std::vector<std::vector<double>> inverse_cofactor(
    const std::vector<std::vector<double>>& a) {
  const std::size_t d = a.size();
  const double det = det3(a);
  std::vector<std::vector<double>> inv(d, std::vector<double>(d));
  if (d == 1) {
    inv[0][0] = 1.0 / a[0][0];
    return inv;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double sign = (i + j) % 2 ? -1.0 : 1.0;
      inv[j][i] = sign * det3(minor_of(a, i, j)) / det;
    }
  }
  return inv;
}

// Posterior under per-class Gaussians with unbiased covariance plus ridge loading.
inline std::vector<double> qda_oracle(const Matrix& X, const std::vector<std::size_t>& y,
                                      std::size_t K, double ridge, std::span<const double> x) {
  const std::size_t d = X.cols();
  std::vector<double> logp(K);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<double> mu(d, 0.0);
    double n = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != k) continue;
      n += 1;
      for (std::size_t j = 0; j < d; ++j) mu[j] += X(i, j);
    }
    for (double& m : mu) m /= n;
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != k) continue;
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) cov[a][b] += (X(i, a) - mu[a]) * (X(i, b) - mu[b]);
      }
    }
    double tr = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) cov[a][b] /= (n - 1);
      tr += cov[a][a];
    }
    for (std::size_t a = 0; a < d; ++a) cov[a][a] += ridge * tr / static_cast<double>(d);
    const auto inv = inverse_cofactor(cov);
    double q = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) q += (x[a] - mu[a]) * inv[a][b] * (x[b] - mu[b]);
    }
    logp[k] =
        -0.5 * (q + std::log(det3(cov)) + static_cast<double>(d) * std::log(2 * std::numbers::pi));
  }
  const double mx = *std::max_element(logp.begin(), logp.end());
  double z = 0;
  for (double& v : logp) z += (v = std::exp(v - mx));
  for (double& v : logp) v /= z;
  return logp;
}

// Majority by explicit counting over every k-subwindow.
inline std::vector<std::size_t> brute_force_vote(const std::vector<std::size_t>& pred,
                                                 const Matrix& P, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s + k <= pred.size(); ++s) {
    std::map<std::size_t, std::size_t> count;
    for (std::size_t i = s; i < s + k; ++i) ++count[pred[i]];
    std::size_t top = 0;
    for (auto& [label, c] : count) top = std::max(top, c);
    std::vector<std::size_t> tied;
    for (auto& [label, c] : count) {
      if (c == top) tied.push_back(label);
    }
    std::size_t best = tied[0];
    double best_mass = -1;
    for (std::size_t label : tied) {
      double mass = 0;
      for (std::size_t i = s; i < s + k; ++i) mass += P(i, label);
      if (mass > best_mass) {
        best_mass = mass;
        best = label;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace vrid::test
