#include "vrid/simd/kernels.hpp"

namespace vrid::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double center) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - center;
    acc += d * d;
  }
  return acc;
}

void min_max_scalar(const double* x, std::size_t n, double* lo, double* hi) {
  double mn = x[0], mx = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    mn = x[i] < mn ? x[i] : mn;
    mx = x[i] > mx ? x[i] : mx;
  }
  *lo = mn;
  *hi = mx;
}

void scaled_diff_scalar(const double* x, std::size_t n, double scale, double* out) {
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = (x[i + 1] - x[i]) * scale;
}

void affine_scalar(const double* x, const double* offset, const double* scale, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - offset[i]) * scale[i];
}

constexpr KernelTable kScalar{Isa::Scalar,       dot_scalar,     axpy_scalar,        sum_scalar,
                              sum_sq_dev_scalar, min_max_scalar, scaled_diff_scalar, affine_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace vrid::simd
