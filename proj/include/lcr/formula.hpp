#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace lcr {

/// Exact non-negative rational in lowest terms.
class Rational {
public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::string str() const; // always "k/d"

  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class Kind : std::uint8_t {
  Var, Top, Bot, Not, Imp, Cond, And, Or, OPlus, OTimes, OMinus, Iff, J, I
};

int arity(Kind k);
const char* kind_name(Kind k);

/// Immutable formula tree with shared structure. Equality is structural;
/// `node_id()` exposes identity for memoising traversals over shared DAGs.
class Formula {
public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula a);
  static Formula imp(Formula a, Formula b);
  static Formula cond(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula oplus(Formula a, Formula b);
  static Formula otimes(Formula a, Formula b);
  static Formula ominus(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula J(Rational index, Formula a);
  static Formula I(Rational index, Formula a);
  static Formula binary(Kind k, Formula a, Formula b);
  static Formula unary(Kind k, Formula a); // Not only
  static Formula indexed(Kind k, Rational index, Formula a); // J or I

  Kind kind() const;
  const std::string& name() const;  // Var only
  Rational index() const;           // J/I only
  const Formula& child(int i) const;
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }
  int arity() const { return lcr::arity(kind()); }

  std::size_t hash() const;
  std::size_t size() const; // node count of the tree, counting shared subtrees repeatedly
  const void* node_id() const { return node_.get(); }

  bool operator==(const Formula& other) const;

  struct Node;
  static const Node* raw(const Formula& f);

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

} // namespace lcr
