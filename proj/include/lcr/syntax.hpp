#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcr/formula.hpp"

namespace lcr {

/// Variable used when normalising Top to (v -> v) and Bot to ~(v -> v). It is
/// not a valid identifier in the concrete syntax, and every evaluator gives it
/// the fixed value 0.
inline constexpr std::string_view kReservedVar = "_t";

class IndexError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// k such that a = k / (m - 1); throws IndexError when no such integer exists.
int index_numerator(Rational a, int m);
bool representable(Rational a, int m);

/// Rewrite into Var / Not / Imp / Cond only. Shared subtrees stay shared, and
/// a formula already in that fragment comes back unchanged.
Formula normalize(const Formula& f, int m);

/// Core formula worth 1 exactly when `f` takes value `a`, and 0 otherwise.
Formula mk_J(Rational a, const Formula& f, int m);

/// J_c(f) disjoined over every c >= a in ascending order, left-associated.
/// The J disjuncts are core formulas; the disjunctions are Or nodes.
Formula mk_I(Rational a, const Formula& f, int m);

/// f_k -> (f_{k-1} -> ... (f_1 -> consequent)); the last antecedent is outermost.
Formula imp_chain(std::span<const Formula> antecedents, Formula consequent);

Formula strong_product(std::span<const Formula> factors);
Formula strong_sum(std::span<const Formula> terms);

/// Every subtree of `f` as written, deduplicated, in post-order of first
/// occurrence.
std::vector<Formula> subformula_closure(const Formula& f);

/// True if `set` contains every subformula of each of its members.
bool is_subformula_closed(std::span<const Formula> set);

/// Sorted distinct variable names, excluding kReservedVar.
std::vector<std::string> variables(const Formula& f);
std::vector<std::string> variables(std::span<const Formula> fs);

/// Maximum number of nested `=>` along any branch.
int conditional_depth(const Formula& f);

bool contains_conditional(const Formula& f);

} // namespace lcr
