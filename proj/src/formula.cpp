#include "lcr/formula.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lcr {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("rational must be k/d with k >= 0, d > 0");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ <=> static_cast<__int128>(o.num_) * den_;
}

int arity(Kind k) {
  switch (k) {
  case Kind::Var:
  case Kind::Top:
  case Kind::Bot: return 0;
  case Kind::Not:
  case Kind::J:
  case Kind::I: return 1;
  default: return 2;
  }
}

const char* kind_name(Kind k) {
  switch (k) {
  case Kind::Var: return "Var";
  case Kind::Top: return "Top";
  case Kind::Bot: return "Bot";
  case Kind::Not: return "Not";
  case Kind::Imp: return "Imp";
  case Kind::Cond: return "Cond";
  case Kind::And: return "And";
  case Kind::Or: return "Or";
  case Kind::OPlus: return "OPlus";
  case Kind::OTimes: return "OTimes";
  case Kind::OMinus: return "OMinus";
  case Kind::Iff: return "Iff";
  case Kind::J: return "J";
  case Kind::I: return "I";
  }
  return "?";
}

struct Formula::Node {
  Kind kind;
  std::string name;
  Rational index;
  std::vector<Formula> kids;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  const std::size_t r = a + b;
  return r < a ? SIZE_MAX : r;
}

bool nodes_equal(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
  switch (a->kind) {
  case Kind::Var: return a->name == b->name;
  case Kind::Top:
  case Kind::Bot: return true;
  case Kind::J:
  case Kind::I:
    if (a->index != b->index) return false;
    [[fallthrough]];
  case Kind::Not: return nodes_equal(Formula::raw(a->kids[0]), Formula::raw(b->kids[0]));
  default:
    return nodes_equal(Formula::raw(a->kids[0]), Formula::raw(b->kids[0])) &&
           nodes_equal(Formula::raw(a->kids[1]), Formula::raw(b->kids[1]));
  }
}

} // namespace

const Formula::Node* Formula::raw(const Formula& f) { return f.node_.get(); }

Formula Formula::var(std::string name) {
  const std::size_t h = mix(static_cast<std::size_t>(Kind::Var), std::hash<std::string>{}(name));
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, h, 1}));
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(
      Node{Kind::Top, {}, {}, {}, mix(0, static_cast<std::size_t>(Kind::Top)), 1}));
  return t;
}

Formula Formula::bot() {
  static const Formula f(std::make_shared<const Node>(
      Node{Kind::Bot, {}, {}, {}, mix(0, static_cast<std::size_t>(Kind::Bot)), 1}));
  return f;
}

Formula Formula::unary(Kind k, Formula a) {
  if (k != Kind::Not) throw std::invalid_argument("unary() only builds negations");
  const std::size_t h = mix(static_cast<std::size_t>(k), a.hash());
  const std::size_t n = sat_add(a.size(), 1);
  return Formula(std::make_shared<const Node>(Node{k, {}, {}, {std::move(a)}, h, n}));
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  if (lcr::arity(k) != 2) throw std::invalid_argument("binary() needs a binary connective");
  std::size_t h = mix(static_cast<std::size_t>(k), a.hash());
  h = mix(h, b.hash());
  const std::size_t n = sat_add(sat_add(a.size(), b.size()), 1);
  return Formula(std::make_shared<const Node>(Node{k, {}, {}, {std::move(a), std::move(b)}, h, n}));
}

Formula Formula::indexed(Kind k, Rational index, Formula a) {
  if (k != Kind::J && k != Kind::I) throw std::invalid_argument("indexed() builds J or I only");
  if (index > Rational(1)) throw std::invalid_argument("J/I index must lie in [0,1]");
  std::size_t h = mix(static_cast<std::size_t>(k), a.hash());
  h = mix(h, std::hash<std::int64_t>{}(index.num()) * 31 + std::hash<std::int64_t>{}(index.den()));
  const std::size_t n = sat_add(a.size(), 1);
  return Formula(std::make_shared<const Node>(Node{k, {}, index, {std::move(a)}, h, n}));
}

Formula Formula::neg(Formula a) { return unary(Kind::Not, std::move(a)); }
Formula Formula::imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
Formula Formula::cond(Formula a, Formula b) { return binary(Kind::Cond, std::move(a), std::move(b)); }
Formula Formula::conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::oplus(Formula a, Formula b) { return binary(Kind::OPlus, std::move(a), std::move(b)); }
Formula Formula::otimes(Formula a, Formula b) {
  return binary(Kind::OTimes, std::move(a), std::move(b));
}
Formula Formula::ominus(Formula a, Formula b) {
  return binary(Kind::OMinus, std::move(a), std::move(b));
}
Formula Formula::iff(Formula a, Formula b) { return binary(Kind::Iff, std::move(a), std::move(b)); }
Formula Formula::J(Rational index, Formula a) { return indexed(Kind::J, index, std::move(a)); }
Formula Formula::I(Rational index, Formula a) { return indexed(Kind::I, index, std::move(a)); }

Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::name() const {
  if (node_->kind != Kind::Var) throw std::logic_error("name() on a non-variable");
  return node_->name;
}

Rational Formula::index() const {
  if (node_->kind != Kind::J && node_->kind != Kind::I) {
    throw std::logic_error("index() on a formula without index");
  }
  return node_->index;
}

const Formula& Formula::child(int i) const {
  if (i < 0 || i >= arity()) throw std::out_of_range("child index");
  return node_->kids[static_cast<std::size_t>(i)];
}

std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::operator==(const Formula& other) const {
  return nodes_equal(node_.get(), other.node_.get());
}

} // namespace lcr
