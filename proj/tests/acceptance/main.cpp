// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gen.hpp"
#include "oracle.hpp"
#include "samples.hpp"

#include "lcr/cli.hpp"
#include "lcr/model_io.hpp"
#include "lcr/parser.hpp"
#include "lcr/proof.hpp"
#include "lcr/proof_io.hpp"
#include "lcr/search.hpp"
#include "lcr/syntax.hpp"

using namespace lcr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct CliRun {
  int code;
  json doc;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json doc;
  try {
    doc = json::parse(out.str());
  } catch (const json::exception&) {
  }
  return {code, doc};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lcr_acceptance";
  fs::create_directories(dir);
  return dir / name;
}

Formula v(const char* name) { return Formula::var(name); }
Rational idx(int k, int m) { return Rational(k, m - 1); }

Formula chain(std::vector<Formula> ants, Formula last) { return imp_chain(ants, std::move(last)); }

// Every instance of the theorem list for scale m, with phi = p, psi = q, theta = r.
std::vector<Formula> theorem_corpus(int m) {
  const Formula p = v("p"), q = v("q"), r = v("r");
  std::vector<Formula> out;
  auto J = [&](int k, const Formula& f) { return Formula::J(idx(k, m), f); };
  auto I = [&](int k, const Formula& f) { return Formula::I(idx(k, m), f); };
  const int top = m - 1;

  out.push_back(chain(std::vector<Formula>(m - 1, p), Formula::J(Rational(1), p)));
  out.push_back(Formula::imp(Formula::conj(p, q), Formula::conj(q, p)));
  for (int a = 0; a <= top; ++a)
    out.push_back(Formula::imp(Formula::imp(J(a, p), Formula::imp(J(a, p), q)), Formula::imp(J(a, p), q)));
  {
    std::vector<Formula> ants;
    for (int i = 0; i < m; ++i) ants.push_back(Formula::imp(J(i, p), q));
    out.push_back(chain(ants, q));
  }
  out.push_back(Formula::imp(J(top, p), p));
  out.push_back(Formula::imp(Formula::imp(p, Formula::imp(q, r)), Formula::imp(q, Formula::imp(p, r))));
  out.push_back(Formula::imp(Formula::conj(p, q), p));
  out.push_back(Formula::iff(p, Formula::neg(Formula::neg(p))));
  out.push_back(Formula::imp(p, Formula::imp(q, p)));
  out.push_back(Formula::imp(Formula::otimes(q, Formula::imp(q, r)), r));
  out.push_back(Formula::iff(Formula::imp(Formula::otimes(p, q), r), Formula::imp(p, Formula::imp(q, r))));
  out.push_back(Formula::imp(Formula::imp(p, q),
                             Formula::imp(Formula::imp(p, r), Formula::imp(p, Formula::conj(q, r)))));
  for (int a = 0; a <= top; ++a)
    for (int b = a + 1; b <= top; ++b) out.push_back(Formula::imp(J(a, q), Formula::neg(I(b, q))));
  {
    std::vector<Formula> ants;
    for (int i = 0; i < m; ++i) ants.push_back(Formula::iff(J(i, p), J(i, q)));
    out.push_back(chain(ants, Formula::iff(p, q)));
  }
  // A single p <-> q antecedent is not enough once m > 2; it is repeated
  // m - 1 times, the same reading as the first schema.
  for (int i = 0; i < m; ++i)
    out.push_back(chain(std::vector<Formula>(m - 1, Formula::iff(p, q)), Formula::iff(J(i, p), J(i, q))));
  for (int a = 0; a <= top; ++a) out.push_back(Formula::iff(J(top, J(a, q)), J(a, q)));
  for (int a = 0; a <= top; ++a)
    out.push_back(Formula::imp(Formula::imp(I(a, p), Formula::imp(I(a, p), q)), Formula::imp(I(a, p), q)));
  for (int a = 0; a <= top; ++a)
    out.push_back(Formula::iff(I(a, Formula::conj(q, r)), Formula::conj(I(a, q), I(a, r))));
  for (int a = 0; a <= top; ++a)
    for (int b = 0; b <= top; ++b)
      for (int c = 0; c <= top; ++c)
        out.push_back(Formula::iff(Formula::imp(I(a, p), Formula::imp(I(b, q), I(c, r))),
                                   Formula::imp(Formula::conj(I(a, p), I(b, q)), I(c, r))));
  for (int a = 0; a <= top; ++a)
    out.push_back(Formula::iff(J(top, Formula::neg(I(a, p))), Formula::neg(I(a, p))));
  for (int a = 0; a <= top; ++a)
    for (int b = 0; b <= a; ++b) out.push_back(Formula::imp(I(a, q), I(b, q)));
  return out;
}

Outcome theorem_corpus_check() {
  Outcome o;
  std::size_t count = 0;
  for (int m : {3, 5}) {
    for (const Formula& f : theorem_corpus(m)) {
      const CliRun r = cli({"taut", "--m", std::to_string(m), "--formula", print(f)});
      ++count;
      if (r.code != cli::kOk) o.fail("m=" + std::to_string(m) + ": " + print(f));
    }
  }
  o.detail = o.ok ? std::to_string(count) + " instances" : o.detail;
  return o;
}

Outcome indicator_check() {
  Outcome o;
  for (int m = 2; m <= 7; ++m) {
    // One world per value of p makes a single evaluation exhaustive.
    std::vector<std::string> worlds;
    for (int i = 0; i < m; ++i) worlds.push_back("w" + std::to_string(i));
    KripkeModel M(m, worlds, {"p"});
    for (int i = 0; i < m; ++i) M.set_value(0, static_cast<WorldId>(i), static_cast<std::uint8_t>(i));
    for (int a = 0; a < m; ++a) {
      const Formula J = mk_J(idx(a, m), v("p"), m);
      const Formula I = mk_I(idx(a, m), v("p"), m);
      for (int i = 0; i < m; ++i) {
        const int j_expected = i == a ? m - 1 : 0;
        const int i_expected = i >= a ? m - 1 : 0;
        if (oracle::eval_prop(J, m, {{"p", i}}) != j_expected) o.fail("J m=" + std::to_string(m));
        if (oracle::eval_prop(I, m, {{"p", i}}) != i_expected) o.fail("I m=" + std::to_string(m));
      }
      if (eval_worlds(M, Formula::J(idx(a, m), v("p"))) != eval_worlds(M, J)) o.fail("J node");
      if (eval_worlds(M, Formula::I(idx(a, m), v("p"))) != eval_worlds(M, I)) o.fail("I node");
    }
  }
  return o;
}

Outcome soundness_check() {
  Outcome o;
  testgen::FormulaGen gen(77);
  std::size_t instances = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RandomModelOptions opts;
    opts.extra_relations = 3;
    opts.default_relation = static_cast<std::uint8_t>(seed % 3);
    const KripkeModel M = random_model(seed, 3, 1 + seed % 3, {"p", "q", "r"}, opts);
    for (int k = 0; k < 4; ++k) {
      const Formula phi = gen(2), psi = gen(2), theta = gen(2);
      const Formula a1 = Formula::imp(Formula::cond(phi, Formula::conj(psi, theta)),
                                      Formula::conj(Formula::cond(phi, psi), Formula::cond(phi, theta)));
      const Formula a2 = Formula::imp(Formula::conj(Formula::cond(phi, psi), Formula::cond(phi, theta)),
                                      Formula::cond(phi, Formula::conj(psi, theta)));
      const Formula a3 = Formula::cond(phi, Formula::top());
      for (const Formula& f : {a1, a2, a3}) {
        ++instances;
        if (!match_axiom(f, false)) o.fail("not an axiom instance: " + print(f));
        for (WorldId w = 0; w < M.world_count(); ++w) {
          if (eval(M, w, f).is_one() && oracle::eval_model(M, w, f) == 2) continue;
          o.fail("seed " + std::to_string(seed) + ": " + print(f));
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(instances) + " instances";
  return o;
}

const char* kCK = "(p => (q -> r)) -> ((p => q) -> (p => r))";

Outcome ck_check() {
  Outcome o;
  const CliRun s = cli({"search", "--m", "3", "--max-worlds", "2", "--formula", kCK});
  if (s.code != cli::kFails || s.doc.value("status", "") != "countermodel") {
    o.fail("search found no countermodel");
    return o;
  }
  const fs::path path = scratch("ck.json");
  save_model(path, s.doc["model"]);
  const CliRun e = cli({"eval", "--model", path.string(), "--world", s.doc["witness_world"], "--formula", kCK});
  if (e.code != cli::kOk) o.fail("eval failed");
  else if (e.doc["value"] == "1") o.fail("value re-evaluates to 1");
  else o.detail = "value " + e.doc["value"].get<std::string>();
  return o;
}

Outcome fid_check() {
  Outcome o;
  const Formula f = parse("p => p");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomModelOptions opts;
    opts.fid = true;
    opts.extra_relations = 2;
    opts.default_relation = 0;
    const KripkeModel M = random_model(seed, 3, 1 + seed % 4, {"p", "q"}, opts);
    if (!check_fid(M).empty()) o.fail("generator broke fid, seed " + std::to_string(seed));
    for (WorldId w = 0; w < M.world_count(); ++w)
      if (oracle::eval_model(M, w, f) != 2 || !eval(M, w, f).is_one()) o.fail("seed " + std::to_string(seed));
  }
  const CliRun s = cli({"search", "--m", "3", "--max-worlds", "3", "--formula", "p => p"});
  if (s.code != cli::kFails) o.fail("no countermodel without fid");
  else if (s.doc["model"]["worlds"].size() != 1) o.fail("countermodel is not a one-world model");
  return o;
}

Outcome filtration_check() {
  Outcome o;
  const std::vector<std::vector<Formula>> sigmas{subformula_closure(parse("p => q")),
                                                 subformula_closure(parse("(p => (q => r)) -> ~(q (+) r)"))};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomModelOptions opts;
    opts.extra_relations = 3;
    opts.default_relation = static_cast<std::uint8_t>(seed % 3);
    const KripkeModel M = random_model(seed, 3, 1 + seed % 4, {"p", "q", "r"}, opts);
    for (const auto& sigma : sigmas) {
      const Filtration f = filtrate(M, sigma);
      if (!check_preservation(M, f, sigma).empty()) o.fail("discrepancy, seed " + std::to_string(seed));
      if (static_cast<double>(f.model.world_count()) > std::pow(3.0, static_cast<double>(sigma.size())))
        o.fail("quotient too large, seed " + std::to_string(seed));
    }
  }
  return o;
}

// Two-valued reading: a conditional holds at x when every world accessible
// from x under the antecedent's extension satisfies the consequent.
bool classical(const KripkeModel& M, WorldId x, const Formula& f) {
  switch (f.kind()) {
  case Kind::Var: return f.name() == "_t" ? false : M.value(*M.var_index(f.name()), x) == 1;
  case Kind::Top: return true;
  case Kind::Bot: return false;
  case Kind::Not: return !classical(M, x, f.lhs());
  case Kind::Imp: return !classical(M, x, f.lhs()) || classical(M, x, f.rhs());
  case Kind::And:
  case Kind::OTimes: return classical(M, x, f.lhs()) && classical(M, x, f.rhs());
  case Kind::Or:
  case Kind::OPlus: return classical(M, x, f.lhs()) || classical(M, x, f.rhs());
  case Kind::OMinus: return classical(M, x, f.lhs()) && !classical(M, x, f.rhs());
  case Kind::Iff: return classical(M, x, f.lhs()) == classical(M, x, f.rhs());
  case Kind::J: return f.index().num() == 1 ? classical(M, x, f.lhs()) : !classical(M, x, f.lhs());
  case Kind::I: return f.index().num() == 0 || classical(M, x, f.lhs());
  case Kind::Cond: {
    std::vector<std::uint8_t> key;
    for (WorldId y = 0; y < M.world_count(); ++y) key.push_back(classical(M, y, f.lhs()));
    const Matrix* R = M.find_relation(key);
    for (WorldId y = 0; y < M.world_count(); ++y) {
      const bool access = (R ? R->at(x, y) : *M.default_relation()) == 1;
      if (access && !classical(M, y, f.rhs())) return false;
    }
    return true;
  }
  }
  return false;
}

Outcome classical_check() {
  Outcome o;
  testgen::FormulaGen gen(5);
  gen.m = 2;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomModelOptions opts;
    opts.crisp_relations = true;
    opts.extra_relations = 2;
    opts.default_relation = static_cast<std::uint8_t>(seed % 2);
    const KripkeModel M = random_model(seed, 2, 1 + seed % 4, {"p", "q", "r"}, opts);
    for (int k = 0; k < 5; ++k) {
      const Formula f = Formula::cond(gen(2), gen(3));
      const Lanes got = eval_worlds(M, f);
      for (WorldId w = 0; w < M.world_count(); ++w)
        if ((got[w] == 1) != classical(M, w, f)) o.fail("seed " + std::to_string(seed) + ": " + print(f));
    }
  }
  return o;
}

Outcome proof_check() {
  Outcome o;
  std::size_t rejected = 0;
  for (const std::string& name : samples::names()) {
    const samples::Sample s = samples::load(name);
    if (!check_derivation(derivation_from_json(s.doc).derivation, s.goal).ok) o.fail(name + " rejected");
    const auto muts = samples::mutations(name);
    if (muts.size() != 20) o.fail(name + ": expected 20 mutations");
    for (const auto& m : muts) {
      const Verdict v = check_derivation(derivation_from_json(samples::apply(s.doc, m)).derivation, s.goal);
      if (v.ok || !v.error || v.error->line != m.expect)
        o.fail(name + ": mutation of line " + std::to_string(m.line) + " misjudged");
      else ++rejected;
    }
  }
  if (o.ok) o.detail = std::to_string(rejected) + " mutations rejected";
  return o;
}

Outcome round_trip_check() {
  Outcome o;
  testgen::FormulaGen gen(99);
  for (int i = 0; i < 1000; ++i) {
    gen.m = 2 + i % 6;
    const Formula f = gen(8);
    if (!(parse(print(f)) == f)) o.fail(print(f));
  }
  return o;
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"theorem corpus at m=3 and m=5", 60, theorem_corpus_check},
      {"J/I expansions are value indicators", 30, indicator_check},
      {"axioms hold in 500 random models", 60, soundness_check},
      {"CK countermodel via search and eval", 120, ck_check},
      {"fid models validate p => p; search refutes it", 60, fid_check},
      {"filtration preserves values and stays small", 120, filtration_check},
      {"m=2 conditionals match the classical clause", 30, classical_check},
      {"proof checker samples and mutations", 10, proof_check},
      {"parser round trip", 10, round_trip_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_s) o.fail("over time limit");
    failures += !o.ok;
    std::printf("%s %zu %s (%.2fs / %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, secs, c.limit_s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
