#include "kernels_impl.hpp"

#include <algorithm>
#include <cassert>

namespace lcr::kernels {

namespace {

Lane sat_sub(Lane a, Lane b) { return a > b ? static_cast<Lane>(a - b) : Lane{0}; }

void neg(Lane top, std::span<const Lane> a, std::span<Lane> out) {
  assert(out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Lane>(top - a[i]);
}

Lane binary_one(LaneBinary op, Lane top, Lane x, Lane y) {
  switch (op) {
  case LaneBinary::Imp: return static_cast<Lane>(top - sat_sub(x, y));
  case LaneBinary::Meet: return std::min(x, y);
  case LaneBinary::Join: return std::max(x, y);
  case LaneBinary::OPlus: return static_cast<Lane>(std::min<int>(top, x + y));
  case LaneBinary::OTimes: return static_cast<Lane>(std::max<int>(0, x + y - top));
  case LaneBinary::OMinus: return sat_sub(x, y);
  case LaneBinary::Iff: return static_cast<Lane>(top - std::max(sat_sub(x, y), sat_sub(y, x)));
  }
  return 0;
}

void binary(LaneBinary op, Lane top, std::span<const Lane> a, std::span<const Lane> b,
            std::span<Lane> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = binary_one(op, top, a[i], b[i]);
}

void indicator(LaneIndicator op, Lane top, Lane k, std::span<const Lane> a, std::span<Lane> out) {
  assert(out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool hit = op == LaneIndicator::Equal ? a[i] == k : a[i] >= k;
    out[i] = hit ? top : Lane{0};
  }
}

Lane implication_infimum(Lane top, std::span<const Lane> row, std::span<const Lane> vals) {
  assert(row.size() == vals.size());
  Lane worst = 0;
  for (std::size_t i = 0; i < row.size(); ++i) worst = std::max(worst, sat_sub(row[i], vals[i]));
  return static_cast<Lane>(top - worst);
}

bool all_top(Lane top, std::span<const Lane> a) {
  return std::all_of(a.begin(), a.end(), [top](Lane v) { return v == top; });
}

constexpr KernelTable kScalar{"scalar", neg, binary, indicator, implication_infimum, all_top};

} // namespace

const KernelTable& scalar_table() { return kScalar; }

} // namespace lcr::kernels
