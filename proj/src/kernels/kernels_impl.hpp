#pragma once

#include "lcr/kernels.hpp"

namespace lcr::kernels::detail {

#if defined(__x86_64__) || defined(_M_X64)
#define LCR_HAVE_AVX2_KERNELS 1
const KernelTable& avx2_table_unchecked();
#else
#define LCR_HAVE_AVX2_KERNELS 0
#endif

} // namespace lcr::kernels::detail
