#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vrid::classifiers {

/// Returns f(x) and writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
  std::size_t max_iter = 1000;
  std::size_t history = 10;
  double grad_tol = 1e-6;  // on the Euclidean gradient norm
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Limited-memory BFGS with backtracking Armijo line search. Deterministic.
LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& options = {});

}  // namespace vrid::classifiers
