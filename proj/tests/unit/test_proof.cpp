#include <doctest.h>

#include "lcr/model_io.hpp"
#include "lcr/parser.hpp"
#include "lcr/proof.hpp"
#include "lcr/proof_io.hpp"
#include "lcr/search.hpp"
#include "oracle.hpp"
#include "samples.hpp"

using namespace lcr;

namespace {

Formula rename(const Formula& f, const std::map<std::string, std::string>& names) {
  switch (f.kind()) {
  case Kind::Var: {
    auto it = names.find(f.name());
    return it == names.end() ? f : Formula::var(it->second);
  }
  case Kind::Top:
  case Kind::Bot: return f;
  case Kind::Not: return Formula::neg(rename(f.child(0), names));
  case Kind::J:
  case Kind::I: return Formula::indexed(f.kind(), f.index(), rename(f.child(0), names));
  default: return Formula::binary(f.kind(), rename(f.lhs(), names), rename(f.rhs(), names));
  }
}

Derivation single(int m, const char* text, Rule rule) {
  Derivation d;
  d.m = m;
  d.lines.push_back({parse(text), {rule, 0, {}, std::nullopt}});
  return d;
}

} // namespace

TEST_CASE("axiom matching examples") {
  CHECK(match_axiom(parse("(p => (q & r)) -> ((p => q) & (p => r))"), false) == Axiom::A1);
  CHECK(match_axiom(parse("(p => q) & (p => r) -> (p => q & r)"), false) == Axiom::A2);
  CHECK(match_axiom(parse("p => T"), false) == Axiom::A3);
  CHECK(match_axiom(parse("p => p"), true) == Axiom::LID);
  CHECK_FALSE(match_axiom(parse("p => p"), false));
  // metavariables bind whole formulas, repeated ones must agree
  CHECK(match_axiom(parse("(s -> t => (q | s) & ~r) -> (s -> t => q | s) & (s -> t => ~r)"), false) ==
        Axiom::A1);
  CHECK_FALSE(match_axiom(parse("(p => (q & r)) -> ((s => q) & (p => r))"), false));
  CHECK_FALSE(match_axiom(parse("(p => (q & r)) -> ((p => r) & (p => q))"), false));
  CHECK_FALSE(match_axiom(parse("p => ~F"), false));
}

TEST_CASE("check_line examples") {
  CHECK_FALSE(check_line(single(3, "q & r <-> r & q", Rule::LTaut), 0));
  Derivation d = single(3, "q & r <-> r & q", Rule::LTaut);
  d.lines.push_back({parse("(p => (q & r)) <-> (p => (r & q))"), {Rule::RCEC, 0, {1}, std::nullopt}});
  CHECK_FALSE(check_line(d, 1));
  d.lines.push_back({parse("(q & r => s) <-> (r & q => s)"), {Rule::RCEA, 0, {1}, std::nullopt}});
  CHECK_FALSE(check_line(d, 2));

  Derivation mp;
  mp.m = 3;
  mp.lines.push_back({parse("p -> p"), {Rule::LTaut, 0, {}, std::nullopt}});
  mp.lines.push_back({parse("(p -> p) -> (q -> q -> (p -> p))"), {Rule::LTaut, 0, {}, std::nullopt}});
  mp.lines.push_back({parse("q -> q -> (p -> p)"), {Rule::MP, 0, {2, 1}, std::nullopt}});
  const auto err = check_line(mp, 2);
  REQUIRE(err);
  CHECK(err->rule == "MP");
  CHECK(err->line == 3);
  REQUIRE(err->expected);
  REQUIRE(err->found);
  CHECK(*err->expected == "((p -> p) -> q -> q -> p -> p) -> q -> q -> p -> p");
  CHECK(*err->found == "p -> p");
  mp.lines[2].why.lines = {1, 2};
  CHECK_FALSE(check_line(mp, 2));
}

TEST_CASE("LTaut failures name a falsifying assignment") {
  const auto err = check_line(single(3, "p | ~p", Rule::LTaut), 0);
  REQUIRE(err);
  CHECK(err->message.find("p = 1/2") != std::string::npos);
}

TEST_CASE("empty derivations and goal mismatches are rejected") {
  Derivation empty;
  const Verdict v = check_derivation(empty, parse("p"));
  CHECK_FALSE(v.ok);
  REQUIRE(v.error);
  CHECK(v.error->message == "empty derivation");
  const Verdict w = check_derivation(single(3, "p => T", Rule::A3), parse("q => T"));
  CHECK_FALSE(w.ok);
  CHECK(w.error->line == 1);
}

TEST_CASE("identity axiom needs the option") {
  const Derivation d = single(3, "p => p", Rule::LID);
  CHECK_FALSE(check_derivation(d, parse("p => p")).ok);
  CheckOptions opts;
  opts.allow_lid = true;
  CHECK(check_derivation(d, parse("p => p"), opts).ok);
}

TEST_CASE("rules other than MP apply to theorem lines only, unless enabled") {
  Derivation d;
  d.m = 3;
  d.premises = {parse("p <-> q")};
  d.lines.push_back({parse("p <-> q"), {Rule::Premise, 1, {}, std::nullopt}});
  d.lines.push_back({parse("(p => r) <-> (q => r)"), {Rule::RCEA, 0, {1}, std::nullopt}});
  const Verdict strict = check_derivation(d, parse("(p => r) <-> (q => r)"));
  CHECK_FALSE(strict.ok);
  CHECK(strict.error->line == 2);
  CheckOptions opts;
  opts.rules_on_premise_lines = true;
  CHECK(check_derivation(d, parse("(p => r) <-> (q => r)"), opts).ok);
}

TEST_CASE("Ra premise indices are the products a_i * b for every a, b at m = 3") {
  const int m = 3;
  const std::vector<Formula> gammas{Formula::var("g1"), Formula::var("g2"), Formula::var("g3")};
  for (int a = 0; a < m; ++a) {
    RaArgs args{Rational(a, m - 1), Formula::var("f"), gammas, Formula::var("g"), {}, {}};
    const RaShape shape = ra_shape(args, m);
    REQUIRE(shape.premises.size() == 3);
    for (int k = 0; k < m; ++k) {
      const int b = m - 1 - k; // descending b
      Formula cur = shape.premises[static_cast<std::size_t>(k)];
      // antecedents come off outermost first: gamma_3, gamma_2, gamma_1
      for (int i = m; i >= 1; --i) {
        REQUIRE(cur.kind() == Kind::Imp);
        const Formula ant = cur.lhs();
        REQUIRE(ant.kind() == Kind::I);
        CHECK(ant.child(0) == gammas[static_cast<std::size_t>(i - 1)]);
        const TruthValue ai(m - i, m);
        const int want = tv_binary(BinaryOp::OTimes, ai, TruthValue(b, m)).numerator();
        CHECK(want == oracle::otimes(m - i, b, m - 1));
        CHECK(ant.index() == Rational(want, m - 1));
        cur = cur.rhs();
      }
      REQUIRE(cur.kind() == Kind::I);
      CHECK(cur.index() == Rational(oracle::otimes(a, b, m - 1), m - 1));
    }
    Formula c = shape.conclusion;
    for (int i = m; i >= 1; --i) {
      CHECK(c.lhs() == Formula::I(Rational(m - i, m - 1), Formula::cond(Formula::var("f"),
                                                                      gammas[static_cast<std::size_t>(i - 1)])));
      c = c.rhs();
    }
    CHECK(c == Formula::I(Rational(a, m - 1), Formula::cond(Formula::var("f"), Formula::var("g"))));
  }
}

TEST_CASE("sample derivations are accepted") {
  for (const std::string& name : samples::names()) {
    const samples::Sample s = samples::load(name);
    const DerivationDocument doc = derivation_from_json(s.doc);
    const Verdict v = check_derivation(doc.derivation, s.goal);
    CAPTURE(name);
    CHECK(v.ok);
    if (v.error) MESSAGE(v.error->describe());
  }
}

TEST_CASE("single-token mutations are rejected at the recorded line") {
  for (const std::string& name : samples::names()) {
    const samples::Sample s = samples::load(name);
    const auto muts = samples::mutations(name);
    CHECK(muts.size() == 20);
    for (const auto& m : muts) {
      const auto& original = s.doc["lines"].at(m.line - 1).at(m.field);
      CAPTURE(name); CAPTURE(m.line); CAPTURE(m.value.dump());
      CHECK(samples::token_distance(original, m.value) == 1);
      const DerivationDocument doc = derivation_from_json(samples::apply(s.doc, m));
      const Verdict v = check_derivation(doc.derivation, s.goal);
      CHECK_FALSE(v.ok);
      REQUIRE(v.error);
      CHECK(v.error->line == m.expect);
    }
  }
}

TEST_CASE("acceptance is invariant under renaming variables") {
  const std::map<std::string, std::string> names{{"p", "x"}, {"q", "y1"}, {"r", "p"}, {"s", "q"}};
  for (const std::string& name : samples::names()) {
    const samples::Sample s = samples::load(name);
    DerivationDocument doc = derivation_from_json(s.doc);
    Derivation& d = doc.derivation;
    for (auto& prem : d.premises) prem = rename(prem, names);
    for (auto& line : d.lines) {
      line.formula = rename(line.formula, names);
      if (line.why.ra) {
        RaArgs& ra = *line.why.ra;
        ra.phi = rename(ra.phi, names);
        ra.gamma = rename(ra.gamma, names);
        for (auto& g : ra.gammas) g = rename(g, names);
      }
    }
    CAPTURE(name);
    CHECK(check_derivation(d, rename(s.goal, names)).ok);
  }
}

TEST_CASE("theorems of the samples hold in random models") {
  for (const std::string& name : samples::names()) {
    const samples::Sample s = samples::load(name);
    const DerivationDocument doc = derivation_from_json(s.doc);
    if (!doc.derivation.premises.empty()) continue;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomModelOptions opts;
      opts.extra_relations = 3;
      opts.default_relation = static_cast<std::uint8_t>(seed % 3);
      const KripkeModel M = random_model(seed, 3, 1 + seed % 3, {"p", "q", "r"}, opts);
      for (const auto& line : doc.derivation.lines) {
        CAPTURE(name); CAPTURE(seed); CAPTURE(print(line.formula));
        CHECK(valid_in_model(M, line.formula));
      }
    }
  }
}

TEST_CASE("derivation documents reject malformed input") {
  using nlohmann::json;
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"m": 3})")), FormatError);
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"m": 3, "lines": [{"formula": "p", "rule": "Magic"}]})")),
                  FormatError);
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"m": 3, "lines": [{"formula": "p =>", "rule": "LTaut"}]})")),
                  FormatError);
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"m": 3, "lines": [{"formula": "p", "rule": "MP"}]})")),
                  FormatError);
  CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"m": 1, "lines": []})")), FormatError);
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("1") == Rational(1));
  CHECK_THROWS(parse_rational("3/2"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}
