#include "lcr/truth_value.hpp"

#include <algorithm>
#include <numeric>

namespace lcr {

namespace {

void require_same_scale(TruthValue a, TruthValue b) {
  if (a.scale() != b.scale()) {
    throw ScaleError("truth values of different scales: " + std::to_string(a.scale()) +
                     " vs " + std::to_string(b.scale()));
  }
}

} // namespace

TruthValue::TruthValue(int numerator, int scale) : num_(numerator), scale_(scale) {
  if (scale < 2 || scale > kMaxScale) {
    throw ScaleError("scale must lie in [2, " + std::to_string(kMaxScale) +
                     "], got " + std::to_string(scale));
  }
  if (numerator < 0 || numerator > scale - 1) {
    throw ScaleError("numerator " + std::to_string(numerator) + " outside [0, " +
                     std::to_string(scale - 1) + "]");
  }
}

std::string TruthValue::str() const {
  return std::to_string(num_) + "/" + std::to_string(top());
}

std::string TruthValue::reduced_str() const {
  if (num_ == 0) return "0";
  if (is_one()) return "1";
  const int g = std::gcd(num_, top());
  return std::to_string(num_ / g) + "/" + std::to_string(top() / g);
}

std::strong_ordering compare(TruthValue a, TruthValue b) {
  require_same_scale(a, b);
  return a.numerator() <=> b.numerator();
}

TruthValue tv_neg(TruthValue a) { return {a.top() - a.numerator(), a.scale()}; }

TruthValue tv_imp(TruthValue a, TruthValue b) {
  require_same_scale(a, b);
  const int top = a.top();
  return {std::min(top, top - a.numerator() + b.numerator()), a.scale()};
}

TruthValue tv_binary(BinaryOp op, TruthValue a, TruthValue b) {
  require_same_scale(a, b);
  const int top = a.top();
  const int x = a.numerator();
  const int y = b.numerator();
  int r = 0;
  switch (op) {
  case BinaryOp::Meet: r = std::min(x, y); break;
  case BinaryOp::Join: r = std::max(x, y); break;
  case BinaryOp::OPlus: r = std::min(top, x + y); break;
  case BinaryOp::OTimes: r = std::max(0, x + y - top); break;
  case BinaryOp::OMinus: r = std::max(0, x - y); break;
  }
  return {r, a.scale()};
}

int n_value(TruthValue a) {
  const int top = a.top();
  if (2 * a.numerator() < top || a.is_one()) {
    throw std::domain_error("n(a) requires 1/2 <= a < 1, got " + a.str());
  }
  // k * (top - num) < top, largest such k
  const int gap = top - a.numerator();
  return (top - 1) / gap;
}

} // namespace lcr
