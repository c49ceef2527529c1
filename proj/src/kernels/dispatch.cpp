#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace lcr::kernels {

const KernelTable* avx2_table() {
#if LCR_HAVE_AVX2_KERNELS
  if (__builtin_cpu_supports("avx2")) return &detail::avx2_table_unchecked();
#endif
  return nullptr;
}

namespace {

const KernelTable* pick_default() {
  if (const char* env = std::getenv("LCR_KERNELS"); env && std::string_view(env) == "scalar") {
    return &scalar_table();
  }
  if (const KernelTable* simd = avx2_table()) return simd;
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

} // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_release); }

} // namespace lcr::kernels
