#include <doctest.h>

#include <filesystem>

#include "gen.hpp"
#include "lcr/model_io.hpp"
#include "lcr/parser.hpp"
#include "lcr/search.hpp"
#include "lcr/syntax.hpp"
#include "oracle.hpp"

using namespace lcr;

namespace {

KripkeModel one_world(int m, std::uint8_t p_value) {
  KripkeModel M(m, {"w"}, {"p"});
  M.set_value(0, 0, p_value);
  M.set_default_relation(0);
  return M;
}

void set_rel(KripkeModel& M, std::vector<std::uint8_t> key, std::vector<std::uint8_t> cells) {
  Matrix mx(M.world_count(), 0);
  std::copy(cells.begin(), cells.end(), mx.cells().begin());
  M.set_relation(Proposition::from_values(key, M.scale()), mx);
}

// The two-world model on which the CK instance drops to 1/2.
KripkeModel ck_model() {
  KripkeModel M(3, {"x", "y"}, {"p", "q", "r"});
  for (WorldId w = 0; w < 2; ++w) M.set_value(0, w, 0);
  M.set_value(1, 0, 0);
  M.set_value(2, 0, 0);
  M.set_value(1, 1, 1);
  M.set_value(2, 1, 0);
  set_rel(M, {0, 0}, {0, 1, 0, 0});
  M.set_default_relation(0);
  return M;
}

const char* kCK = "(p => (q -> r)) -> ((p => q) -> (p => r))";

} // namespace

TEST_CASE("eval examples") {
  const KripkeModel M = one_world(3, 1);
  CHECK(eval(M, 0, parse("p -> p")).numerator() == 2);
  CHECK(eval(M, 0, parse("J{1/2}(p)")).numerator() == 2);
  const KripkeModel ck = ck_model();
  REQUIRE(validate_model(ck).empty());
  CHECK(eval(ck, 0, parse(kCK)) == TruthValue(1, 3));
  CHECK(oracle::eval_model(ck, 0, parse(kCK)) == 1);
}

TEST_CASE("proposition_of examples") {
  const KripkeModel M = one_world(3, 2);
  CHECK(proposition_of(M, parse("p")).cells == std::vector<std::vector<WorldId>>{{}, {}, {0}});
  CHECK(proposition_of(M, parse("~p")).cells == std::vector<std::vector<WorldId>>{{0}, {}, {}});
  KripkeModel N(3, {"x", "y"}, {"p"});
  N.set_value(0, 0, 0);
  N.set_value(0, 1, 1);
  CHECK(proposition_of(N, parse("p")).cells == std::vector<std::vector<WorldId>>{{0}, {1}, {}});
}

TEST_CASE("validity and entailment examples") {
  CHECK(valid_in_model(ck_model(), parse("p => T")));
  CHECK(valid_in_model(random_model(5, 4, 3, {"p", "q"}, 2), parse("(p & q) => T")));
  CHECK_FALSE(valid_in_model(one_world(3, 1), parse("p")));
  const std::vector<Formula> sigma{parse("p")};
  CHECK(entails_in_model(one_world(3, 1), sigma, parse("p")));
  // p = 1/2 everywhere, so no world meets the premises
  CHECK(entails_in_model(one_world(3, 1), sigma, parse("~p")));
  CHECK_FALSE(entails_in_model(one_world(3, 2), sigma, parse("~p")));
}

TEST_CASE("evaluation errors") {
  KripkeModel M = one_world(3, 1);
  CHECK_THROWS_AS(eval(M, 0, parse("q")), EvalError);
  CHECK_THROWS_AS(eval(M, 0, parse("J{1/3}(p)")), IndexError);
  M.set_default_relation(std::nullopt);
  CHECK_THROWS_AS(eval(M, 0, parse("p => p")), MissingRelation);
  set_rel(M, {1}, {2});
  CHECK(eval(M, 0, parse("p => p")).numerator() == 1);
  // ~p has the same proposition as p here, so it shares the relation
  CHECK(eval(M, 0, parse("~p => p")).numerator() == 1);
  CHECK_THROWS_AS(eval(M, 0, parse("(p -> p) => p")), MissingRelation);
}

TEST_CASE("fid examples") {
  KripkeModel M(3, {"x", "y"}, {"p"});
  M.set_value(0, 0, 0);
  M.set_value(0, 1, 1);
  M.set_default_relation(0);
  set_rel(M, {0, 1}, {0, 0, 0, 0});
  CHECK(check_fid(M).empty());
  set_rel(M, {0, 1}, {0, 1, 0, 0});
  CHECK(check_fid(M).empty());
  set_rel(M, {0, 1}, {2, 0, 0, 0});
  const auto v = check_fid(M);
  REQUIRE(v.size() == 1);
  CHECK(v[0].from == 0);
  CHECK(v[0].to == 0);
  CHECK(v[0].access == 2);
  CHECK(v[0].cell == 0);
}

TEST_CASE("validate_model diagnostics") {
  CHECK(validate_model(ck_model()).empty());
  KripkeModel M = ck_model();
  M.set_relation(Proposition{{{0, 1}, {1}, {}}}, Matrix(2, 0));
  CHECK_FALSE(validate_model(M).empty());
  KripkeModel N(3, {"x", "y"}, {"p"});
  N.set_value(0, 0, 0);
  CHECK_FALSE(validate_model(N).empty());
  KripkeModel E(3, {}, {"p"});
  CHECK_FALSE(validate_model(E).empty());
}

TEST_CASE("model JSON round trip") {
  const KripkeModel M = random_model(3, 4, 3, {"p", "q"}, 3);
  const auto doc = model_to_json(M);
  CHECK(model_from_json(nlohmann::json::parse(doc.dump())) == M);
  KripkeModel strict = M;
  strict.set_default_relation(std::nullopt);
  CHECK(model_from_json(nlohmann::json::parse(model_to_json(strict).dump())) == strict);
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"m": 3})")), FormatError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), FormatError);
}

TEST_CASE("evaluation agrees with the oracle on random models, with both kernel tables") {
  const kernels::KernelTable& saved = kernels::active();
  std::vector<const kernels::KernelTable*> tables{&kernels::scalar_table()};
  if (kernels::avx2_table()) tables.push_back(kernels::avx2_table());
  for (const kernels::KernelTable* kt : tables) {
    kernels::set_active(*kt);
    testgen::FormulaGen gen(31);
    for (int trial = 0; trial < 300; ++trial) {
      const int m = 2 + trial % 5;
      gen.m = m;
      RandomModelOptions opts;
      opts.extra_relations = 3;
      opts.default_relation = static_cast<std::uint8_t>(trial % m);
      const KripkeModel M = random_model(static_cast<std::uint64_t>(trial), m, 1 + trial % 40,
                                         {"p", "q", "r"}, opts);
      const Formula f = gen(5);
      const Lanes got = eval_worlds(M, f);
      CAPTURE(kt->name); CAPTURE(print(f)); CAPTURE(trial);
      for (WorldId w = 0; w < M.world_count(); ++w) REQUIRE(got[w] == oracle::eval_model(M, w, f));
    }
  }
  kernels::set_active(saved);
}

TEST_CASE("J and I nodes agree with their expansions, and derived connectives with their definitions") {
  testgen::FormulaGen gen(47);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 5;
    gen.m = m;
    const KripkeModel M = random_model(static_cast<std::uint64_t>(1000 + trial), m, 3, {"p", "q", "r"},
                                       RandomModelOptions{2, false, false, 0});
    const Formula f = gen(3);
    const Lanes direct = eval_worlds(M, f);
    const Lanes expanded = eval_worlds(M, normalize(f, m));
    CAPTURE(print(f));
    CHECK(direct == expanded);
    for (int k = 0; k < m; ++k) {
      const Lanes j = eval_worlds(M, Formula::J(Rational(k, m - 1), f));
      const Lanes i = eval_worlds(M, Formula::I(Rational(k, m - 1), f));
      for (WorldId w = 0; w < M.world_count(); ++w) {
        CHECK((j[w] == 0 || j[w] == m - 1));
        CHECK((i[w] == 0 || i[w] == m - 1));
      }
    }
  }
}

TEST_CASE("fid models validate p => p") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomModelOptions opts;
    opts.fid = true;
    opts.extra_relations = 2;
    opts.default_relation = 0;
    const KripkeModel M = random_model(seed, 3, 3, {"p", "q"}, opts);
    REQUIRE(check_fid(M).empty());
    CHECK(valid_in_model(M, parse("p => p")));
    CHECK(valid_in_model(M, parse("q => q")));
  }
}
