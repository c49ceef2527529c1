#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lcr/formula.hpp"

namespace lcr {

enum class Rule { Premise, LTaut, A1, A2, A3, LID, MP, RCEA, RCEC, Ra, RaGen };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

/// Parameters of an R_a step. For plain Ra the antecedent degrees are fixed
/// to (m-i)/(m-1), i = 1..m, and `degrees` stays empty; RaGen supplies its own
/// degrees, one per entry of `gammas`.
struct RaArgs {
  Rational a;
  Formula phi;
  std::vector<Formula> gammas;
  Formula gamma;
  std::vector<Rational> degrees;
  /// One cited line per b, for b = 1, (m-2)/(m-1), ..., 0.
  std::vector<std::size_t> lines;
};

struct Justification {
  Rule rule;
  std::size_t premise = 0;        // Premise: 1-based index into premises
  std::vector<std::size_t> lines; // MP: {minor, major}; RCEA/RCEC: {source}; 1-based
  std::optional<RaArgs> ra;
};

struct ProofLine {
  Formula formula;
  Justification why;
};

struct Derivation {
  int m = 3;
  std::vector<Formula> premises;
  std::vector<ProofLine> lines;
};

struct CheckOptions {
  /// Accept the identity axiom f => f (rule LID).
  bool allow_lid = false;
  /// Let RCEA, RCEC and R_a cite lines that depend on premises. Off by
  /// default: only MP propagates premise-dependent lines.
  bool rules_on_premise_lines = false;
};

struct LineError {
  std::size_t line = 0; // 1-based
  std::string rule;
  std::string message;
  std::optional<std::string> expected;
  std::optional<std::string> found;

  std::string describe() const;
};

struct Verdict {
  bool ok = false;
  std::optional<LineError> error;
};

enum class Axiom { A1, A2, A3, LID };
const char* axiom_name(Axiom a);

/// Schema match tried in the order A1, A2, A3, LID.
std::optional<Axiom> match_axiom(const Formula& f, bool allow_lid);
bool matches_axiom(Axiom axiom, const Formula& f);

/// Checks line `index` (0-based) against its justification.
std::optional<LineError> check_line(const Derivation& d, std::size_t index,
                                    const CheckOptions& options = {});

/// Every line checks and the last line equals `goal`.
Verdict check_derivation(const Derivation& d, const Formula& goal, const CheckOptions& options = {});

/// The m premises and the conclusion an R_a step relates, as the checker
/// expects them.
struct RaShape {
  std::vector<Formula> premises; // descending b
  Formula conclusion;
};
RaShape ra_shape(const RaArgs& args, int m);

} // namespace lcr
