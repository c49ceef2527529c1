#pragma once

// Lane-wise Łukasiewicz arithmetic over byte numerators.
//
// Every kernel takes `top` = m - 1 and operates on spans of numerators in
// [0, top]. The scalar table is the reference; SIMD tables must agree with it
// bit for bit on every admissible input.

#include <cstdint>
#include <span>
#include <string_view>

namespace lcr::kernels {

using Lane = std::uint8_t;

enum class LaneBinary : std::uint8_t { Imp, Meet, Join, OPlus, OTimes, OMinus, Iff };
enum class LaneIndicator : std::uint8_t { Equal, AtLeast };

struct KernelTable {
  std::string_view name;
  /// out[i] = top - a[i]
  void (*neg)(Lane top, std::span<const Lane> a, std::span<Lane> out);
  void (*binary)(LaneBinary op, Lane top, std::span<const Lane> a, std::span<const Lane> b,
                 std::span<Lane> out);
  /// out[i] = top if a[i] == k (Equal) or a[i] >= k (AtLeast), else 0
  void (*indicator)(LaneIndicator op, Lane top, Lane k, std::span<const Lane> a,
                    std::span<Lane> out);
  /// min over i of (row[i] -> vals[i]); `top` for empty input
  Lane (*implication_infimum)(Lane top, std::span<const Lane> row, std::span<const Lane> vals);
  /// true iff every lane equals top
  bool (*all_top)(Lane top, std::span<const Lane> a);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table chosen at first use: AVX2 when available unless the environment
/// variable LCR_KERNELS=scalar forces the reference path.
const KernelTable& active();

/// Override the active table (tests, benchmarks).
void set_active(const KernelTable& table);

} // namespace lcr::kernels
