#include "kernels_internal.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace vrid::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_dev_neon(const double* x, std::size_t n, double center) {
  const float64x2_t c = vdupq_n_f64(center);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), c);
    acc = vfmaq_f64(acc, d, d);
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = x[i] - center;
    total += d * d;
  }
  return total;
}

void min_max_neon(const double* x, std::size_t n, double* lo, double* hi) {
  double mn = x[0], mx = x[0];
  std::size_t i = 1;
  if (n >= 2) {
    float64x2_t vmin = vld1q_f64(x);
    float64x2_t vmax = vmin;
    for (i = 2; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(x + i);
      vmin = vminq_f64(vmin, v);
      vmax = vmaxq_f64(vmax, v);
    }
    mn = vminvq_f64(vmin);
    mx = vmaxvq_f64(vmax);
  }
  for (; i < n; ++i) {
    mn = x[i] < mn ? x[i] : mn;
    mx = x[i] > mx ? x[i] : mx;
  }
  *lo = mn;
  *hi = mx;
}

void scaled_diff_neon(const double* x, std::size_t n, double scale, double* out) {
  if (n < 2) return;
  const std::size_t m = n - 1;
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    vst1q_f64(out + i, vmulq_f64(vsubq_f64(vld1q_f64(x + i + 1), vld1q_f64(x + i)), s));
  }
  for (; i < m; ++i) out[i] = (x[i + 1] - x[i]) * scale;
}

void affine_neon(const double* x, const double* offset, const double* scale, double* out,
                 std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i,
              vmulq_f64(vsubq_f64(vld1q_f64(x + i), vld1q_f64(offset + i)), vld1q_f64(scale + i)));
  }
  for (; i < n; ++i) out[i] = (x[i] - offset[i]) * scale[i];
}

constexpr KernelTable kNeon{Isa::Neon,       dot_neon,     axpy_neon,        sum_neon,
                            sum_sq_dev_neon, min_max_neon, scaled_diff_neon, affine_neon};

}  // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

}  // namespace vrid::simd::detail

#else

namespace vrid::simd::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace vrid::simd::detail

#endif
