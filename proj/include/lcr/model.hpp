#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcr/formula.hpp"
#include "lcr/lane_eval.hpp"
#include "lcr/truth_value.hpp"

namespace lcr {

using WorldId = std::size_t;

/// Marks a valuation or matrix entry that was never supplied.
inline constexpr std::uint8_t kUnset = 0xff;

/// Square W x W table of numerators, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t n, std::uint8_t fill) : n_(n), cells_(n * n, fill) {}

  std::size_t size() const { return n_; }
  std::uint8_t at(WorldId x, WorldId y) const { return cells_[x * n_ + y]; }
  void set(WorldId x, WorldId y, std::uint8_t v) { cells_[x * n_ + y] = v; }
  std::span<const std::uint8_t> row(WorldId x) const { return {cells_.data() + x * n_, n_}; }
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::span<std::uint8_t> cells() { return cells_; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// m-tuple of world sets; cell i holds the worlds where a formula takes
/// value i/(m-1).
struct Proposition {
  std::vector<std::vector<WorldId>> cells;

  /// Partition from per-world numerators.
  static Proposition from_values(std::span<const std::uint8_t> values, int scale);

  /// Per-world cell index, or nullopt if the cells do not partition
  /// {0, ..., n_worlds - 1} into exactly `scale` parts.
  std::optional<std::vector<std::uint8_t>> assignment(std::size_t n_worlds, int scale) const;

  bool operator==(const Proposition&) const = default;
};

struct Relation {
  Proposition prop;
  Matrix matrix;
};

/// Finite Kripke model with many-valued, proposition-indexed accessibility.
/// Relations are looked up by the per-world value vector of the antecedent,
/// which is the canonical form of its proposition.
class KripkeModel {
public:
  KripkeModel(int scale, std::vector<std::string> worlds, std::vector<std::string> vars);

  int scale() const { return scale_; }
  std::uint8_t top() const { return static_cast<std::uint8_t>(scale_ - 1); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t world_count() const { return worlds_.size(); }

  std::optional<WorldId> world_index(const std::string& name) const;
  std::optional<std::size_t> var_index(const std::string& name) const;

  std::uint8_t value(std::size_t var, WorldId w) const { return valuation_[var][w]; }
  void set_value(std::size_t var, WorldId w, std::uint8_t v) { valuation_[var][w] = v; }
  std::span<const std::uint8_t> var_values(std::size_t var) const { return valuation_[var]; }

  const std::vector<Relation>& relations() const { return relations_; }
  /// Stores (or replaces) the relation for `prop`. Props that are not a
  /// partition are kept for diagnostics but never matched.
  void set_relation(Proposition prop, Matrix matrix);
  void erase_relation(std::span<const std::uint8_t> key);
  const Matrix* find_relation(std::span<const std::uint8_t> key) const;

  /// Constant used for propositions without a stored relation; nullopt makes
  /// such lookups an error.
  std::optional<std::uint8_t> default_relation() const { return default_; }
  void set_default_relation(std::optional<std::uint8_t> v) { default_ = v; }

  bool operator==(const KripkeModel& o) const;

private:
  int scale_;
  std::vector<std::string> worlds_;
  std::vector<std::string> vars_;
  std::vector<std::vector<std::uint8_t>> valuation_;
  std::vector<Relation> relations_;
  std::map<std::vector<std::uint8_t>, std::size_t> index_;
  std::optional<std::uint8_t> default_;
};

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class MissingRelation : public EvalError {
public:
  MissingRelation(const std::string& msg, std::vector<std::uint8_t> key)
      : EvalError(msg), key_(std::move(key)) {}
  const std::vector<std::uint8_t>& key() const { return key_; }

private:
  std::vector<std::uint8_t> key_;
};

/// World-parallel evaluator bound to one model. Reuse it to share work
/// across several formulas on the same model.
class ModelEvaluator : public LaneEvaluator {
public:
  explicit ModelEvaluator(const KripkeModel& model);

protected:
  Lanes variable(const Formula& var) override;
  Lanes conditional(const Formula& cond) override;

private:
  const KripkeModel& model_;
};

TruthValue eval(const KripkeModel& model, WorldId x, const Formula& f);
/// Numerator of f at every world, in world order.
Lanes eval_worlds(const KripkeModel& model, const Formula& f);

Proposition proposition_of(const KripkeModel& model, const Formula& f);

bool valid_in_model(const KripkeModel& model, const Formula& f);
bool entails_in_model(const KripkeModel& model, std::span<const Formula> sigma, const Formula& f);

struct FidViolation {
  std::size_t relation; // index into model.relations()
  WorldId from;
  WorldId to;
  std::uint8_t access;  // R_X(from, to)
  std::uint8_t cell;    // index of the cell of X holding `to`
};

/// Pairs where R_X(x, y) = i/(m-1) but y lies in a cell of X below i.
std::vector<FidViolation> check_fid(const KripkeModel& model);

/// Human-readable problems with the model's structure; empty when it is a
/// well-formed model.
std::vector<std::string> validate_model(const KripkeModel& model);

} // namespace lcr
