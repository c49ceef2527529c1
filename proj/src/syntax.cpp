#include "lcr/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lcr/truth_value.hpp"

namespace lcr {

int index_numerator(Rational a, int m) {
  if (m < 2 || m > kMaxScale) throw ScaleError("scale out of range: " + std::to_string(m));
  if (a > Rational(1)) throw IndexError("index " + a.str() + " exceeds 1");
  const std::int64_t top = m - 1;
  if ((a.num() * top) % a.den() != 0) {
    throw IndexError("index " + a.str() + " is not a multiple of 1/" + std::to_string(top));
  }
  return static_cast<int>(a.num() * top / a.den());
}

bool representable(Rational a, int m) {
  try {
    index_numerator(a, m);
    return true;
  } catch (const IndexError&) {
    return false;
  }
}

namespace {

Formula reserved() { return Formula::var(std::string(kReservedVar)); }

// Builders that emit the Var/Not/Imp/Cond fragment directly.
Formula or_core(const Formula& a, const Formula& b) { return Formula::imp(Formula::imp(a, b), b); }
Formula and_core(const Formula& a, const Formula& b) {
  return Formula::neg(or_core(Formula::neg(a), Formula::neg(b)));
}
Formula iff_core(const Formula& a, const Formula& b) {
  return and_core(Formula::imp(a, b), Formula::imp(b, a));
}
Formula oplus_core(const Formula& a, const Formula& b) { return Formula::imp(Formula::neg(a), b); }
Formula otimes_core(const Formula& a, const Formula& b) {
  return Formula::neg(Formula::imp(a, Formula::neg(b)));
}
Formula ominus_core(const Formula& a, const Formula& b) { return otimes_core(a, Formula::neg(b)); }

Formula power_core(const Formula& f, int n) {
  Formula acc = f;
  for (int i = 1; i < n; ++i) acc = otimes_core(acc, f);
  return acc;
}

class Normalizer {
public:
  explicit Normalizer(int m) : m_(m), top_(m - 1) {}

  Formula run(const Formula& f) {
    if (auto it = memo_.find(f.node_id()); it != memo_.end()) return it->second;
    Formula out = rewrite(f);
    memo_.emplace(f.node_id(), out);
    keep_.push_back(f);
    return out;
  }

  // `core` must already be normalised.
  Formula J(int k, const Formula& core) {
    const auto key = std::make_pair(core.node_id(), k);
    if (auto it = j_memo_.find(key); it != j_memo_.end()) return it->second;
    Formula out = build_J(k, core);
    j_memo_.emplace(key, out);
    keep_.push_back(core);
    return out;
  }

  Formula I(int k, const Formula& core) {
    Formula acc = J(k, core);
    for (int c = k + 1; c <= top_; ++c) acc = Formula::disj(acc, J(c, core));
    return acc;
  }

private:
  Formula build_J(int k, const Formula& core) {
    if (k == top_) return power_core(core, top_);
    if (2 * k < top_) return J(top_ - k, Formula::neg(core));
    const int n = n_value(TruthValue(k, m_));
    const Formula shrunk = Formula::neg(power_core(core, n));
    const int gap = top_ - k;
    if (n * gap == k) return J(top_, iff_core(shrunk, core));
    return J(n * gap, shrunk);
  }

  Formula rewrite(const Formula& f) {
    switch (f.kind()) {
    case Kind::Var: return f;
    case Kind::Top: return Formula::imp(reserved(), reserved());
    case Kind::Bot: return Formula::neg(Formula::imp(reserved(), reserved()));
    case Kind::Not: {
      Formula a = run(f.lhs());
      return a.node_id() == f.lhs().node_id() ? f : Formula::neg(std::move(a));
    }
    case Kind::J: return J(index_numerator(f.index(), m_), run(f.lhs()));
    case Kind::I: return run(I(index_numerator(f.index(), m_), run(f.lhs())));
    default: break;
    }
    Formula a = run(f.lhs());
    Formula b = run(f.rhs());
    switch (f.kind()) {
    case Kind::Imp:
    case Kind::Cond:
      if (a.node_id() == f.lhs().node_id() && b.node_id() == f.rhs().node_id()) return f;
      return Formula::binary(f.kind(), std::move(a), std::move(b));
    case Kind::And: return and_core(a, b);
    case Kind::Or: return or_core(a, b);
    case Kind::OPlus: return oplus_core(a, b);
    case Kind::OTimes: return otimes_core(a, b);
    case Kind::OMinus: return ominus_core(a, b);
    case Kind::Iff: return iff_core(a, b);
    default: break;
    }
    throw std::logic_error("normalize: unhandled connective");
  }

  int m_;
  int top_;
  std::unordered_map<const void*, Formula> memo_;
  std::map<std::pair<const void*, int>, Formula> j_memo_;
  std::vector<Formula> keep_; // pins memo keys
};

template <typename Visit>
void walk_once(const Formula& f, std::unordered_set<const void*>& seen, Visit&& visit) {
  if (!seen.insert(f.node_id()).second) return;
  for (int i = 0; i < f.arity(); ++i) walk_once(f.child(i), seen, visit);
  visit(f);
}

} // namespace

Formula normalize(const Formula& f, int m) {
  if (m < 2 || m > kMaxScale) throw ScaleError("scale out of range: " + std::to_string(m));
  return Normalizer(m).run(f);
}

Formula mk_J(Rational a, const Formula& f, int m) {
  const int k = index_numerator(a, m);
  Normalizer n(m);
  return n.J(k, n.run(f));
}

Formula mk_I(Rational a, const Formula& f, int m) {
  const int k = index_numerator(a, m);
  Normalizer n(m);
  return n.I(k, n.run(f));
}

Formula imp_chain(std::span<const Formula> antecedents, Formula consequent) {
  Formula acc = std::move(consequent);
  for (const Formula& a : antecedents) acc = Formula::imp(a, acc);
  return acc;
}

Formula strong_product(std::span<const Formula> factors) {
  if (factors.empty()) throw std::invalid_argument("strong product of an empty list");
  Formula acc = factors.front();
  for (const Formula& f : factors.subspan(1)) acc = Formula::otimes(acc, f);
  return acc;
}

Formula strong_sum(std::span<const Formula> terms) {
  if (terms.empty()) throw std::invalid_argument("strong sum of an empty list");
  Formula acc = terms.front();
  for (const Formula& f : terms.subspan(1)) acc = Formula::oplus(acc, f);
  return acc;
}

std::vector<Formula> subformula_closure(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> members;
  std::unordered_set<const void*> seen;
  walk_once(f, seen, [&](const Formula& g) {
    if (members.insert(g).second) out.push_back(g);
  });
  return out;
}

bool is_subformula_closed(std::span<const Formula> set) {
  const std::unordered_set<Formula, FormulaHash> members(set.begin(), set.end());
  for (const Formula& f : set) {
    for (int i = 0; i < f.arity(); ++i) {
      if (!members.contains(f.child(i))) return false;
    }
  }
  return true;
}

std::vector<std::string> variables(std::span<const Formula> fs) {
  std::set<std::string> names;
  std::unordered_set<const void*> seen;
  for (const Formula& f : fs) {
    walk_once(f, seen, [&](const Formula& g) {
      if (g.kind() == Kind::Var && g.name() != kReservedVar) names.insert(g.name());
    });
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> variables(const Formula& f) { return variables(std::span(&f, 1)); }

int conditional_depth(const Formula& f) {
  std::unordered_map<const void*, int> depth;
  std::unordered_set<const void*> seen;
  walk_once(f, seen, [&](const Formula& g) {
    int d = 0;
    for (int i = 0; i < g.arity(); ++i) d = std::max(d, depth.at(g.child(i).node_id()));
    depth[g.node_id()] = d + (g.kind() == Kind::Cond ? 1 : 0);
  });
  return depth.at(f.node_id());
}

bool contains_conditional(const Formula& f) { return conditional_depth(f) > 0; }

} // namespace lcr
