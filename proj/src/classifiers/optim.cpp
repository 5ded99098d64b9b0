#include "vrid/classifiers/optim.hpp"

#include <cmath>
#include <deque>

#include "vrid/simd/kernels.hpp"

namespace vrid::classifiers {
namespace {

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> x0,
                           const LbfgsOptions& options) {
  const std::size_t n = x0.size();
  LbfgsResult r;
  r.x = std::move(x0);
  std::vector<double> g(n), g_new(n), x_new(n), d(n), alpha(options.history);
  r.value = objective(r.x, g);
  r.grad_norm = norm2(g);
  std::deque<CurvaturePair> memory;

  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 60;

  while (r.grad_norm > options.grad_tol && r.iterations < options.max_iter) {
    // Two-loop recursion: d = -H g.
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * simd::dot(memory[k].s, d);
      simd::axpy(-alpha[k], memory[k].y, d);
    }
    double step = 1.0;
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double gamma = simd::dot(last.s, last.y) / simd::dot(last.y, last.y);
      for (double& v : d) v *= gamma;
    } else {
      step = 1.0 / std::max(1.0, r.grad_norm);
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * simd::dot(memory[k].y, d);
      simd::axpy(alpha[k] - beta, memory[k].s, d);
    }

    double slope = simd::dot(g, d);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -r.grad_norm * r.grad_norm;
      step = 1.0 / std::max(1.0, r.grad_norm);
    }

    double f_new = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = r.x[i] + step * d[i];
      f_new = objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= r.value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++r.iterations;
    if (!accepted) break;

    CurvaturePair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - r.x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = simd::dot(pair.s, pair.y);
    if (sy > 1e-12 * norm2(pair.s) * norm2(pair.y)) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > options.history) memory.pop_front();
    }
    r.x.swap(x_new);
    g.swap(g_new);
    r.value = f_new;
    r.grad_norm = norm2(g);
  }
  r.converged = r.grad_norm <= options.grad_tol;
  return r;
}

}  // namespace vrid::classifiers
