#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcr/formula.hpp"
#include "lcr/model.hpp"

namespace lcr {

class SearchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Truth tables for the propositional base

struct TautologyReport {
  bool holds = true;
  /// Atom labels: variable names, then printed conditional subformulas that
  /// were abstracted to atoms.
  std::vector<std::string> atoms;
  /// First falsifying assignment (numerators per atom) and the value reached.
  std::vector<std::uint8_t> counterexample;
  std::uint8_t value = 0;
};

/// Enumerates all m^k assignments to the atoms of `f`. With
/// `abstract_conditionals`, each maximal `=>` subformula becomes an atom
/// (structurally equal ones share an atom); otherwise a conditional is a
/// SearchError.
TautologyReport check_L_tautology(const Formula& f, int m, bool abstract_conditionals);
bool is_L_tautology(const Formula& f, int m, bool abstract_conditionals);

// ---------------------------------------------------------------------------
// Countermodel search

struct SearchBounds {
  std::size_t max_worlds = 1;
  /// Accessibility degrees to try, in enumeration order. Empty means every
  /// value of the scale, strongest first.
  std::vector<std::uint8_t> relation_values;
  /// Maximum number of fully assigned candidate models to evaluate.
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  /// Worker threads; 0 picks the hardware concurrency. Never changes the result.
  unsigned threads = 0;
};

struct Countermodel {
  KripkeModel model;
  WorldId world;
  TruthValue value;
};

enum class SearchStatus { Found, NoneWithinBounds, BudgetExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::NoneWithinBounds;
  std::optional<Countermodel> countermodel;
  std::uint64_t candidates = 0;
};

/// Deterministic bounded search for a model and world where `f` is not 1.
///
/// Worlds grow from 1 to max_worlds. For each size, valuations of f's
/// variables are visited in lexicographic numerator order (variables sorted
/// by name, then worlds). Under each valuation the distinct antecedent
/// propositions of f's conditionals are assigned relation matrices row-major
/// over `relation_values`, innermost antecedents first, recomputing outer
/// propositions after each inner choice. Every other proposition uses the
/// constant-0 default. The first hit in this order is returned regardless of
/// thread count.
SearchResult countermodel_search(const Formula& f, int m, const SearchBounds& bounds,
                                 bool require_fid);

/// Conditional nesting the search accepts.
inline constexpr int kMaxSearchDepth = 3;

// ---------------------------------------------------------------------------
// Filtration

struct Filtration {
  KripkeModel model;
  /// Class index (world of `model`) of each original world.
  std::vector<WorldId> class_of;
};

/// Quotient of `model` by agreement on every formula of `sigma`, with
/// relations lifted by supremum. Classes are numbered by their least member.
Filtration filtrate(const KripkeModel& model, std::span<const Formula> sigma);

struct Discrepancy {
  Formula formula;
  WorldId world;
  std::uint8_t original;
  std::uint8_t filtered;
};

std::vector<Discrepancy> check_preservation(const KripkeModel& original, const Filtration& quotient,
                                            std::span<const Formula> sigma);

// ---------------------------------------------------------------------------
// Random models

struct RandomModelOptions {
  std::size_t extra_relations = 0;
  /// Draw every R_X(x, y) at most the value index of y's cell in X.
  bool fid = false;
  /// Draw relation entries from {0, 1} only.
  bool crisp_relations = false;
  std::optional<std::uint8_t> default_relation;
};

/// Deterministic in `seed`. Valuations are uniform; relations are stored for
/// the proposition of each variable and for `extra_relations` random
/// partitions (duplicates are skipped). Worlds are named w0, w1, ...
KripkeModel random_model(std::uint64_t seed, int m, std::size_t n_worlds,
                         const std::vector<std::string>& vars, const RandomModelOptions& options);
KripkeModel random_model(std::uint64_t seed, int m, std::size_t n_worlds,
                         const std::vector<std::string>& vars, std::size_t extra_relations);

} // namespace lcr
