#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "lcr/formula.hpp"
#include "lcr/kernels.hpp"

namespace lcr {

using Lanes = std::vector<kernels::Lane>;

/// Evaluates a formula over a fixed number of lanes at once (worlds of a
/// model, or rows of a truth table). Connectives run through the active
/// kernel table; variables and conditionals are supplied by the subclass.
/// Results are memoised per node, so shared subtrees are computed once.
class LaneEvaluator {
public:
  LaneEvaluator(int scale, std::size_t lanes);
  virtual ~LaneEvaluator() = default;

  const Lanes& values(const Formula& f);

  int scale() const { return scale_; }
  kernels::Lane top() const { return static_cast<kernels::Lane>(scale_ - 1); }
  std::size_t lanes() const { return lanes_; }

protected:
  virtual Lanes variable(const Formula& var) = 0;
  virtual Lanes conditional(const Formula& cond) = 0;

private:
  Lanes compute(const Formula& f);

  int scale_;
  std::size_t lanes_;
  const kernels::KernelTable& kt_;
  std::unordered_map<const void*, Lanes> memo_;
  std::vector<Formula> pinned_;
};

} // namespace lcr
