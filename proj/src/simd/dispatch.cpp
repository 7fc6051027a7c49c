#include <atomic>
#include <cstdlib>
#include <string>

#include "ssf/simd/kernels.hpp"

namespace ssf::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar, &detail::horner_scalar, &detail::weighted_sum_scalar,
                                 &detail::exp_decay_row_scalar};
  return table;
}

std::optional<KernelTable> avx2_kernels() noexcept {
#if defined(SSF_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return KernelTable{Isa::Avx2, &detail::horner_avx2, &detail::weighted_sum_avx2,
                       &detail::exp_decay_row_avx2};
  }
#endif
  return std::nullopt;
}

namespace {

const KernelTable* select_default() {
  static const std::optional<KernelTable> avx2 = avx2_kernels();
  const char* env = std::getenv("SSF_LAB_SIMD");
  const std::string pref = env ? env : "auto";
  if (pref == "scalar") return &scalar_kernels();
  if (avx2) return &*avx2;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{select_default()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

Isa active_isa() noexcept { return active().isa; }

bool force_isa(Isa isa) noexcept {
  static const std::optional<KernelTable> avx2 = avx2_kernels();
  if (isa == Isa::Scalar) {
    current().store(&scalar_kernels(), std::memory_order_release);
    return true;
  }
  if (!avx2) return false;
  current().store(&*avx2, std::memory_order_release);
  return true;
}

}  // namespace ssf::simd
