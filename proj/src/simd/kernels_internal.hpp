#pragma once

#include "vrid/simd/kernels.hpp"

namespace vrid::simd::detail {

// Null when the variant is not compiled for this target.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

}  // namespace vrid::simd::detail
