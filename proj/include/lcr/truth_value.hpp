#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcr {

/// Largest supported number of truth values. Lane kernels store numerators
/// in bytes and rely on a + b fitting in 8 bits.
inline constexpr int kMaxScale = 128;

class ScaleError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An element i/(m-1) of the m-element Łukasiewicz chain, held exactly as
/// the numerator i together with the scale m.
class TruthValue {
public:
  TruthValue(int numerator, int scale);

  static TruthValue one(int scale) { return {scale - 1, scale}; }
  static TruthValue zero(int scale) { return {0, scale}; }

  int numerator() const { return num_; }
  int scale() const { return scale_; }
  int top() const { return scale_ - 1; }
  bool is_one() const { return num_ == scale_ - 1; }

  /// "i/(m-1)" exactly as stored.
  std::string str() const;
  /// Lowest terms; 0 and 1 print as "0" and "1".
  std::string reduced_str() const;

  bool operator==(const TruthValue&) const = default;

private:
  int num_;
  int scale_;
};

/// Total order within one scale. Mixed scales throw.
std::strong_ordering compare(TruthValue a, TruthValue b);
inline bool operator<(TruthValue a, TruthValue b) { return compare(a, b) < 0; }
inline bool operator<=(TruthValue a, TruthValue b) { return compare(a, b) <= 0; }
inline bool operator>(TruthValue a, TruthValue b) { return compare(a, b) > 0; }
inline bool operator>=(TruthValue a, TruthValue b) { return compare(a, b) >= 0; }

enum class BinaryOp { Meet, Join, OPlus, OTimes, OMinus };

TruthValue tv_neg(TruthValue a);
TruthValue tv_imp(TruthValue a, TruthValue b);
TruthValue tv_binary(BinaryOp op, TruthValue a, TruthValue b);

/// Largest k with k * (1 - a) < 1. Defined for 1/2 <= a < 1.
int n_value(TruthValue a);

} // namespace lcr
