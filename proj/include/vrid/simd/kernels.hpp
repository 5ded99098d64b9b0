#pragma once

// Data-parallel inner loops used by feature extraction, scaling and the
// logistic-regression objective. Each kernel has a scalar reference version and
// optional SIMD variants; the active table is picked once from CPU features and
// can be overridden with VRID_SIMD=scalar|avx2|neon.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace vrid::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  /// sum of (x[i] - center)^2
  double (*sum_sq_dev)(const double* x, std::size_t n, double center);
  /// n >= 1
  void (*min_max)(const double* x, std::size_t n, double* lo, double* hi);
  /// out[i] = (x[i + 1] - x[i]) * scale for i < n - 1
  void (*scaled_diff)(const double* x, std::size_t n, double scale, double* out);
  /// out[i] = (x[i] - offset[i]) * scale[i]
  void (*affine)(const double* x, const double* offset, const double* scale, double* out,
                 std::size_t n);
};

/// Reference implementation; always available.
const KernelTable& scalar_kernels() noexcept;

/// Table for `isa`, or nullptr when it is not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// The table the span wrappers below dispatch to.
const KernelTable& active() noexcept;

/// Switches the active table. Throws ArgumentError if `isa` is unavailable.
void set_active(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double sum_sq_dev(std::span<const double> x, double center) {
  return active().sum_sq_dev(x.data(), x.size(), center);
}
inline void min_max(std::span<const double> x, double& lo, double& hi) {
  active().min_max(x.data(), x.size(), &lo, &hi);
}
inline void scaled_diff(std::span<const double> x, double scale, std::span<double> out) {
  active().scaled_diff(x.data(), x.size(), scale, out.data());
}
inline void affine(std::span<const double> x, std::span<const double> offset,
                   std::span<const double> scale, std::span<double> out) {
  active().affine(x.data(), offset.data(), scale.data(), out.data(), x.size());
}

}  // namespace vrid::simd
