#include "lcr/lane_eval.hpp"

#include <stdexcept>

#include "lcr/syntax.hpp"
#include "lcr/truth_value.hpp"

namespace lcr {

LaneEvaluator::LaneEvaluator(int scale, std::size_t lanes)
    : scale_(scale), lanes_(lanes), kt_(kernels::active()) {
  if (scale < 2 || scale > kMaxScale) throw ScaleError("scale out of range: " + std::to_string(scale));
}

const Lanes& LaneEvaluator::values(const Formula& f) {
  if (auto it = memo_.find(f.node_id()); it != memo_.end()) return it->second;
  Lanes v = compute(f);
  pinned_.push_back(f);
  return memo_.emplace(f.node_id(), std::move(v)).first->second;
}

Lanes LaneEvaluator::compute(const Formula& f) {
  using kernels::LaneBinary;
  const kernels::Lane t = top();
  Lanes out(lanes_);
  switch (f.kind()) {
  case Kind::Var:
    if (f.name() == kReservedVar) return out;
    return variable(f);
  case Kind::Top: return Lanes(lanes_, t);
  case Kind::Bot: return out;
  case Kind::Cond: return conditional(f);
  case Kind::Not: kt_.neg(t, values(f.lhs()), out); return out;
  case Kind::J:
  case Kind::I: {
    const auto k = static_cast<kernels::Lane>(index_numerator(f.index(), scale_));
    kt_.indicator(f.kind() == Kind::J ? kernels::LaneIndicator::Equal
                                      : kernels::LaneIndicator::AtLeast,
                  t, k, values(f.lhs()), out);
    return out;
  }
  default: break;
  }
  LaneBinary op{};
  switch (f.kind()) {
  case Kind::Imp: op = LaneBinary::Imp; break;
  case Kind::And: op = LaneBinary::Meet; break;
  case Kind::Or: op = LaneBinary::Join; break;
  case Kind::OPlus: op = LaneBinary::OPlus; break;
  case Kind::OTimes: op = LaneBinary::OTimes; break;
  case Kind::OMinus: op = LaneBinary::OMinus; break;
  case Kind::Iff: op = LaneBinary::Iff; break;
  default: throw std::logic_error("lane evaluator: unhandled connective");
  }
  const Lanes& a = values(f.lhs());
  const Lanes& b = values(f.rhs());
  kt_.binary(op, t, a, b, out);
  return out;
}

} // namespace lcr
