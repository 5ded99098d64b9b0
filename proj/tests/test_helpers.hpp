#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "vrid/util/matrix.hpp"

namespace vrid::test {

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vrid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Gaussian blobs: class k centered at k * spread on every axis.
inline Matrix gaussian_blobs(std::size_t per_class, std::size_t n_classes, std::size_t d,
                             double spread, unsigned seed, std::vector<std::size_t>& y) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix X;
  y.clear();
  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row(d);
      for (auto& v : row) v = spread * static_cast<double>(k) + noise(gen);
      X.append_row(row);
      y.push_back(k);
    }
  }
  return X;
}

}  // namespace vrid::test
