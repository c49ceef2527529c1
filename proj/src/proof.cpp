#include "lcr/proof.hpp"

#include <sstream>

#include "lcr/parser.hpp"
#include "lcr/search.hpp"
#include "lcr/syntax.hpp"
#include "lcr/truth_value.hpp"

namespace lcr {

namespace {

constexpr std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Premise, "Premise"}, {Rule::LTaut, "LTaut"}, {Rule::A1, "A1"},     {Rule::A2, "A2"},
    {Rule::A3, "A3"},           {Rule::LID, "LID"},     {Rule::MP, "MP"},     {Rule::RCEA, "RCEA"},
    {Rule::RCEC, "RCEC"},       {Rule::Ra, "Ra"},       {Rule::RaGen, "RaGen"},
};

bool is(const Formula& f, Kind k) { return f.kind() == k; }

// (phi => (psi & theta)) -> ((phi => psi) & (phi => theta))
bool is_a1(const Formula& f) {
  if (!is(f, Kind::Imp)) return false;
  const Formula& l = f.lhs();
  const Formula& r = f.rhs();
  if (!is(l, Kind::Cond) || !is(l.rhs(), Kind::And) || !is(r, Kind::And)) return false;
  const Formula& c1 = r.lhs();
  const Formula& c2 = r.rhs();
  if (!is(c1, Kind::Cond) || !is(c2, Kind::Cond)) return false;
  return c1.lhs() == l.lhs() && c2.lhs() == l.lhs() && c1.rhs() == l.rhs().lhs() &&
         c2.rhs() == l.rhs().rhs();
}

// ((phi => psi) & (phi => theta)) -> (phi => (psi & theta))
bool is_a2(const Formula& f) {
  if (!is(f, Kind::Imp)) return false;
  const Formula& l = f.lhs();
  const Formula& r = f.rhs();
  if (!is(l, Kind::And) || !is(r, Kind::Cond) || !is(r.rhs(), Kind::And)) return false;
  const Formula& c1 = l.lhs();
  const Formula& c2 = l.rhs();
  if (!is(c1, Kind::Cond) || !is(c2, Kind::Cond)) return false;
  return c1.lhs() == r.lhs() && c2.lhs() == r.lhs() && c1.rhs() == r.rhs().lhs() &&
         c2.rhs() == r.rhs().rhs();
}

bool is_a3(const Formula& f) { return is(f, Kind::Cond) && is(f.rhs(), Kind::Top); }
bool is_lid(const Formula& f) { return is(f, Kind::Cond) && f.lhs() == f.rhs(); }

class LineChecker {
public:
  LineChecker(const Derivation& d, const CheckOptions& o) : d_(d), opts_(o) {}

  // Whether each line depends on a premise; filled in order as lines are
  // checked so rules can reject premise-dependent sources.
  std::vector<bool> dependent;

  std::optional<LineError> check(std::size_t idx) {
    const ProofLine& line = d_.lines[idx];
    const Justification& why = line.why;
    err_ = LineError{idx + 1, rule_name(why.rule), {}, {}, {}};
    bool dep = false;
    std::optional<LineError> failure;
    try {
      failure = check_rule(idx, line, dep);
    } catch (const std::exception& e) {
      failure = fail(e.what());
    }
    if (dependent.size() <= idx) dependent.resize(idx + 1);
    dependent[idx] = dep;
    return failure;
  }

private:
  LineError fail(std::string msg, std::optional<Formula> expected = {},
                 std::optional<Formula> found = {}) const {
    LineError e = err_;
    e.message = std::move(msg);
    if (expected) e.expected = print(*expected);
    if (found) e.found = print(*found);
    return e;
  }

  // 1-based citation that must precede `idx`.
  std::optional<LineError> cite(std::size_t idx, std::size_t ref, const Formula** out) const {
    if (ref < 1 || ref > idx) {
      return fail("cites line " + std::to_string(ref) + ", which does not precede it");
    }
    *out = &d_.lines[ref - 1].formula;
    return std::nullopt;
  }

  std::optional<LineError> require_theorem(std::size_t ref) const {
    if (!opts_.rules_on_premise_lines && dependent[ref - 1]) {
      return fail("line " + std::to_string(ref) + " depends on premises; " + err_.rule +
                  " applies to theorems only");
    }
    return std::nullopt;
  }

  std::optional<LineError> check_rule(std::size_t idx, const ProofLine& line, bool& dep) {
    const Formula& f = line.formula;
    const Justification& why = line.why;
    switch (why.rule) {
    case Rule::Premise: {
      dep = true;
      if (why.premise < 1 || why.premise > d_.premises.size()) {
        return fail("no premise number " + std::to_string(why.premise));
      }
      const Formula& p = d_.premises[why.premise - 1];
      if (!(p == f)) return fail("line differs from the cited premise", p, f);
      return std::nullopt;
    }
    case Rule::LTaut: {
      const TautologyReport r = check_L_tautology(f, d_.m, true);
      if (r.holds) return std::nullopt;
      std::ostringstream msg;
      msg << "not a tautology of the base logic at m=" << d_.m << ": value "
          << TruthValue(r.value, d_.m).str() << " when";
      for (std::size_t i = 0; i < r.atoms.size(); ++i) {
        msg << (i ? ", " : " ") << r.atoms[i] << " = " << TruthValue(r.counterexample[i], d_.m).str();
      }
      return fail(msg.str());
    }
    case Rule::A1:
    case Rule::A2:
    case Rule::A3:
    case Rule::LID: {
      const Axiom ax = why.rule == Rule::A1   ? Axiom::A1
                       : why.rule == Rule::A2 ? Axiom::A2
                       : why.rule == Rule::A3 ? Axiom::A3
                                              : Axiom::LID;
      if (ax == Axiom::LID && !opts_.allow_lid) return fail("axiom LID is not enabled");
      if (!matches_axiom(ax, f)) return fail(std::string("not an instance of ") + axiom_name(ax));
      return std::nullopt;
    }
    case Rule::MP: {
      if (why.lines.size() != 2) return fail("MP cites exactly two lines");
      const Formula* minor = nullptr;
      const Formula* major = nullptr;
      if (auto e = cite(idx, why.lines[0], &minor)) return e;
      if (auto e = cite(idx, why.lines[1], &major)) return e;
      dep = dependent[why.lines[0] - 1] || dependent[why.lines[1] - 1];
      const Formula expected = Formula::imp(*minor, f);
      if (!(*major == expected)) {
        return fail("line " + std::to_string(why.lines[1]) + " is not line " +
                        std::to_string(why.lines[0]) + " -> this line",
                    expected, *major);
      }
      return std::nullopt;
    }
    case Rule::RCEA:
    case Rule::RCEC: {
      if (why.lines.size() != 1) return fail(err_.rule + " cites exactly one line");
      const Formula* src = nullptr;
      if (auto e = cite(idx, why.lines[0], &src)) return e;
      if (auto e = require_theorem(why.lines[0])) return e;
      dep = dependent[why.lines[0] - 1];
      if (!is(*src, Kind::Iff)) return fail("cited line is not a biconditional", {}, *src);
      const bool antecedent = why.rule == Rule::RCEA;
      if (!is(f, Kind::Iff) || !is(f.lhs(), Kind::Cond) || !is(f.rhs(), Kind::Cond)) {
        return fail(antecedent ? "expected (A => C) <-> (B => C)" : "expected (C => A) <-> (C => B)",
                    {}, f);
      }
      // theta is read off the left conditional; the rest must agree with it
      const Formula& theta = antecedent ? f.lhs().rhs() : f.lhs().lhs();
      const Formula expected = antecedent ? Formula::iff(Formula::cond(src->lhs(), theta),
                                                         Formula::cond(src->rhs(), theta))
                                          : Formula::iff(Formula::cond(theta, src->lhs()),
                                                         Formula::cond(theta, src->rhs()));
      if (!(f == expected)) return fail("conclusion does not match " + err_.rule, expected, f);
      return std::nullopt;
    }
    case Rule::Ra:
    case Rule::RaGen: {
      if (!why.ra) return fail("missing R_a parameters");
      const RaArgs& args = *why.ra;
      if (why.rule == Rule::Ra) {
        if (!args.degrees.empty()) return fail("Ra takes its degrees from the scale; use RaGen");
        if (args.gammas.size() != static_cast<std::size_t>(d_.m)) {
          return fail("Ra needs exactly m = " + std::to_string(d_.m) + " formulas gamma_i");
        }
      } else if (args.degrees.empty() || args.degrees.size() != args.gammas.size()) {
        return fail("RaGen needs one degree per formula and at least one formula");
      }
      if (args.lines.size() != static_cast<std::size_t>(d_.m)) {
        return fail("R_a cites exactly m = " + std::to_string(d_.m) + " premise lines");
      }
      const RaShape shape = ra_shape(args, d_.m);
      for (std::size_t k = 0; k < args.lines.size(); ++k) {
        const Formula* src = nullptr;
        if (auto e = cite(idx, args.lines[k], &src)) return e;
        if (auto e = require_theorem(args.lines[k])) return e;
        dep = dep || dependent[args.lines[k] - 1];
        if (!(*src == shape.premises[k])) {
          const TruthValue b(d_.m - 1 - static_cast<int>(k), d_.m);
          return fail("premise line " + std::to_string(args.lines[k]) + " (b = " + b.str() +
                          ") has the wrong shape",
                      shape.premises[k], *src);
        }
      }
      if (!(f == shape.conclusion)) return fail("conclusion does not match R_a", shape.conclusion, f);
      return std::nullopt;
    }
    }
    return fail("unknown rule");
  }

  const Derivation& d_;
  const CheckOptions& opts_;
  LineError err_;
};

} // namespace

const char* rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (name == n) return rule;
  }
  return std::nullopt;
}

const char* axiom_name(Axiom a) {
  switch (a) {
  case Axiom::A1: return "A1";
  case Axiom::A2: return "A2";
  case Axiom::A3: return "A3";
  case Axiom::LID: return "LID";
  }
  return "?";
}

bool matches_axiom(Axiom axiom, const Formula& f) {
  switch (axiom) {
  case Axiom::A1: return is_a1(f);
  case Axiom::A2: return is_a2(f);
  case Axiom::A3: return is_a3(f);
  case Axiom::LID: return is_lid(f);
  }
  return false;
}

std::optional<Axiom> match_axiom(const Formula& f, bool allow_lid) {
  for (Axiom a : {Axiom::A1, Axiom::A2, Axiom::A3, Axiom::LID}) {
    if (a == Axiom::LID && !allow_lid) break;
    if (matches_axiom(a, f)) return a;
  }
  return std::nullopt;
}

RaShape ra_shape(const RaArgs& args, int m) {
  const int top = m - 1;
  const int a = index_numerator(args.a, m);
  std::vector<int> degrees;
  if (args.degrees.empty()) {
    for (int i = 1; i <= m; ++i) degrees.push_back(m - i);
  } else {
    for (const Rational& r : args.degrees) degrees.push_back(index_numerator(r, m));
  }
  if (degrees.size() != args.gammas.size()) {
    throw std::invalid_argument("R_a: degree count differs from formula count");
  }
  auto times = [m](int x, int y) {
    return tv_binary(BinaryOp::OTimes, TruthValue(x, m), TruthValue(y, m)).numerator();
  };
  auto idx = [top](int k) { return Rational(k, top); };

  RaShape shape{{}, Formula::top()};
  for (int b = top; b >= 0; --b) {
    std::vector<Formula> ants;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      ants.push_back(Formula::I(idx(times(degrees[i], b)), args.gammas[i]));
    }
    shape.premises.push_back(imp_chain(ants, Formula::I(idx(times(a, b)), args.gamma)));
  }
  std::vector<Formula> ants;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    ants.push_back(Formula::I(idx(degrees[i]), Formula::cond(args.phi, args.gammas[i])));
  }
  shape.conclusion = imp_chain(ants, Formula::I(idx(a), Formula::cond(args.phi, args.gamma)));
  return shape;
}

std::string LineError::describe() const {
  std::string s = "line " + std::to_string(line) + " (" + rule + "): " + message;
  if (expected) s += "\n  expected: " + *expected;
  if (found) s += "\n  found:    " + *found;
  return s;
}

std::optional<LineError> check_line(const Derivation& d, std::size_t index,
                                    const CheckOptions& options) {
  if (index >= d.lines.size()) throw std::out_of_range("no such line");
  LineChecker checker(d, options);
  // Earlier lines only matter for their premise dependence.
  for (std::size_t i = 0; i < index; ++i) checker.check(i);
  return checker.check(index);
}

Verdict check_derivation(const Derivation& d, const Formula& goal, const CheckOptions& options) {
  if (d.lines.empty()) {
    return {false, LineError{0, "-", "empty derivation", {}, {}}};
  }
  LineChecker checker(d, options);
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    if (auto e = checker.check(i)) return {false, std::move(e)};
  }
  const Formula& last = d.lines.back().formula;
  if (!(last == goal)) {
    return {false, LineError{d.lines.size(), rule_name(d.lines.back().why.rule),
                             "final line is not the goal", print(goal), print(last)}};
  }
  return {true, std::nullopt};
}

} // namespace lcr
