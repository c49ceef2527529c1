#include "kernels_impl.hpp"

#if LCR_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <algorithm>
#include <cassert>

namespace lcr::kernels::detail {

namespace {

constexpr std::size_t kWidth = 32;

// Tails fall back to the scalar reference so both paths share one definition
// of the arithmetic for partial vectors.
const KernelTable& ref() { return scalar_table(); }

__m256i load(const Lane* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
void store(Lane* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void neg(Lane top, std::span<const Lane> a, std::span<Lane> out) {
  assert(out.size() == a.size());
  const __m256i t = _mm256_set1_epi8(static_cast<char>(top));
  std::size_t i = 0;
  for (; i + kWidth <= a.size(); i += kWidth) store(&out[i], _mm256_subs_epu8(t, load(&a[i])));
  ref().neg(top, a.subspan(i), out.subspan(i));
}

__m256i binary_vec(LaneBinary op, __m256i t, __m256i x, __m256i y) {
  switch (op) {
  case LaneBinary::Imp: return _mm256_subs_epu8(t, _mm256_subs_epu8(x, y));
  case LaneBinary::Meet: return _mm256_min_epu8(x, y);
  case LaneBinary::Join: return _mm256_max_epu8(x, y);
  case LaneBinary::OPlus: return _mm256_min_epu8(_mm256_adds_epu8(x, y), t);
  case LaneBinary::OTimes: return _mm256_subs_epu8(_mm256_adds_epu8(x, y), t);
  case LaneBinary::OMinus: return _mm256_subs_epu8(x, y);
  case LaneBinary::Iff:
    return _mm256_subs_epu8(t, _mm256_max_epu8(_mm256_subs_epu8(x, y), _mm256_subs_epu8(y, x)));
  }
  return _mm256_setzero_si256();
}

void binary(LaneBinary op, Lane top, std::span<const Lane> a, std::span<const Lane> b,
            std::span<Lane> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  const __m256i t = _mm256_set1_epi8(static_cast<char>(top));
  std::size_t i = 0;
  for (; i + kWidth <= a.size(); i += kWidth) {
    store(&out[i], binary_vec(op, t, load(&a[i]), load(&b[i])));
  }
  ref().binary(op, top, a.subspan(i), b.subspan(i), out.subspan(i));
}

void indicator(LaneIndicator op, Lane top, Lane k, std::span<const Lane> a, std::span<Lane> out) {
  assert(out.size() == a.size());
  const __m256i t = _mm256_set1_epi8(static_cast<char>(top));
  const __m256i kv = _mm256_set1_epi8(static_cast<char>(k));
  std::size_t i = 0;
  for (; i + kWidth <= a.size(); i += kWidth) {
    const __m256i x = load(&a[i]);
    const __m256i hit = op == LaneIndicator::Equal ? _mm256_cmpeq_epi8(x, kv)
                                                   : _mm256_cmpeq_epi8(_mm256_max_epu8(x, kv), x);
    store(&out[i], _mm256_and_si256(hit, t));
  }
  ref().indicator(op, top, k, a.subspan(i), out.subspan(i));
}

Lane horizontal_max(__m256i v) {
  __m128i m = _mm_max_epu8(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  m = _mm_max_epu8(m, _mm_srli_si128(m, 8));
  m = _mm_max_epu8(m, _mm_srli_si128(m, 4));
  m = _mm_max_epu8(m, _mm_srli_si128(m, 2));
  m = _mm_max_epu8(m, _mm_srli_si128(m, 1));
  return static_cast<Lane>(_mm_cvtsi128_si32(m) & 0xff);
}

Lane implication_infimum(Lane top, std::span<const Lane> row, std::span<const Lane> vals) {
  assert(row.size() == vals.size());
  __m256i worst = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kWidth <= row.size(); i += kWidth) {
    worst = _mm256_max_epu8(worst, _mm256_subs_epu8(load(&row[i]), load(&vals[i])));
  }
  const Lane head = static_cast<Lane>(top - horizontal_max(worst));
  const Lane tail = ref().implication_infimum(top, row.subspan(i), vals.subspan(i));
  return std::min(head, tail);
}

bool all_top(Lane top, std::span<const Lane> a) {
  const __m256i t = _mm256_set1_epi8(static_cast<char>(top));
  std::size_t i = 0;
  for (; i + kWidth <= a.size(); i += kWidth) {
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi8(load(&a[i]), t)) != -1) return false;
  }
  return ref().all_top(top, a.subspan(i));
}

constexpr KernelTable kAvx2{"avx2", neg, binary, indicator, implication_infimum, all_top};

} // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2; }

} // namespace lcr::kernels::detail

#endif
