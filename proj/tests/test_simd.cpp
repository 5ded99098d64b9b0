#include <doctest.h>

#include <random>

#include "test_helpers.hpp"
#include "vrid/error.hpp"
#include "vrid/simd/kernels.hpp"

using namespace vrid;
using namespace vrid::simd;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar is always available and listed first") {
    const auto isas = available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == Isa::Scalar);
    CHECK(kernels_for(Isa::Scalar) == &scalar_kernels());
  }

  TEST_CASE("every available ISA matches the scalar reference") {
    const KernelTable& ref = scalar_kernels();
    for (Isa isa : available_isas()) {
      const KernelTable& k = *kernels_for(isa);
      CAPTURE(to_string(isa));
      // lengths around the vector width exercise the remainder loops
      for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 600u, 1001u}) {
        CAPTURE(n);
        const auto a = random_vector(n, 1), b = random_vector(n, 2), c = random_vector(n, 3);
        // reductions may reassociate
        const double tol = 1e-12 * static_cast<double>(n) * 100.0;
        CHECK(test::close(k.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), tol * 10));
        CHECK(test::close(k.sum(a.data(), n), ref.sum(a.data(), n), tol));
        CHECK(test::close(k.sum_sq_dev(a.data(), n, 0.5), ref.sum_sq_dev(a.data(), n, 0.5),
                          tol * 10));
        // elementwise kernels are bit-identical
        double lo1, hi1, lo2, hi2;
        k.min_max(a.data(), n, &lo1, &hi1);
        ref.min_max(a.data(), n, &lo2, &hi2);
        CHECK(lo1 == lo2);
        CHECK(hi1 == hi2);
        std::vector<double> y1 = b, y2 = b;
        k.axpy(1.7, a.data(), y1.data(), n);
        ref.axpy(1.7, a.data(), y2.data(), n);
        CHECK(y1 == y2);
        if (n >= 2) {
          std::vector<double> d1(n - 1), d2(n - 1);
          k.scaled_diff(a.data(), n, 60.0, d1.data());
          ref.scaled_diff(a.data(), n, 60.0, d2.data());
          CHECK(d1 == d2);
        }
        std::vector<double> o1(n), o2(n);
        k.affine(a.data(), b.data(), c.data(), o1.data(), n);
        ref.affine(a.data(), b.data(), c.data(), o2.data(), n);
        CHECK(o1 == o2);
      }
    }
  }

  TEST_CASE("set_active switches dispatch and rejects unavailable ISAs") {
    const Isa before = active().isa;
    for (Isa isa : available_isas()) {
      set_active(isa);
      CHECK(active().isa == isa);
      const std::vector<double> x{3, -1, 4, 1, -5, 9, 2, 6, 5};
      double lo, hi;
      simd::min_max(x, lo, hi);
      CHECK(lo == -5);
      CHECK(hi == 9);
      CHECK(simd::sum(x) == doctest::Approx(24.0));
    }
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
      if (!kernels_for(isa)) CHECK_THROWS_AS(set_active(isa), ArgumentError);
    }
    set_active(before);
  }
}
