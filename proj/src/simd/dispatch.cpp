#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "vrid/error.hpp"
#include "vrid/util/log.hpp"

namespace vrid::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return &scalar_kernels();
    case Isa::Avx2:
      return detail::avx2_table();
    case Isa::Neon:
      return detail::neon_table();
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (kernels_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

namespace {

const KernelTable* pick_default() noexcept {
  if (const char* env = std::getenv("VRID_SIMD")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa)) {
        if (const KernelTable* t = kernels_for(isa)) return t;
        log::warning("VRID_SIMD=" + std::string(want) + " unavailable, using auto-detection");
        break;
      }
    }
  }
  if (const KernelTable* t = detail::avx2_table()) return t;
  if (const KernelTable* t = detail::neon_table()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{pick_default()};
  return slot;
}

}  // namespace

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  const KernelTable* t = kernels_for(isa);
  if (t == nullptr) {
    throw ArgumentError("SIMD variant '" + std::string(to_string(isa)) +
                        "' is not available on this machine");
  }
  active_slot().store(t, std::memory_order_relaxed);
}

}  // namespace vrid::simd
