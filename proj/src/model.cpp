#include "lcr/model.hpp"

#include <algorithm>
#include <set>

#include "lcr/syntax.hpp"

namespace lcr {

Proposition Proposition::from_values(std::span<const std::uint8_t> values, int scale) {
  Proposition p;
  p.cells.resize(static_cast<std::size_t>(scale));
  for (WorldId w = 0; w < values.size(); ++w) p.cells.at(values[w]).push_back(w);
  return p;
}

std::optional<std::vector<std::uint8_t>> Proposition::assignment(std::size_t n_worlds,
                                                                 int scale) const {
  if (cells.size() != static_cast<std::size_t>(scale)) return std::nullopt;
  std::vector<std::uint8_t> out(n_worlds, kUnset);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (WorldId w : cells[i]) {
      if (w >= n_worlds || out[w] != kUnset) return std::nullopt;
      out[w] = static_cast<std::uint8_t>(i);
    }
  }
  if (std::find(out.begin(), out.end(), kUnset) != out.end()) return std::nullopt;
  return out;
}

KripkeModel::KripkeModel(int scale, std::vector<std::string> worlds, std::vector<std::string> vars)
    : scale_(scale), worlds_(std::move(worlds)), vars_(std::move(vars)),
      valuation_(vars_.size(), std::vector<std::uint8_t>(worlds_.size(), kUnset)) {
  if (scale < 2 || scale > kMaxScale) throw ScaleError("scale out of range: " + std::to_string(scale));
}

std::optional<WorldId> KripkeModel::world_index(const std::string& name) const {
  const auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<WorldId>(it - worlds_.begin());
}

std::optional<std::size_t> KripkeModel::var_index(const std::string& name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

void KripkeModel::set_relation(Proposition prop, Matrix matrix) {
  auto key = prop.assignment(worlds_.size(), scale_);
  if (key) {
    if (auto it = index_.find(*key); it != index_.end()) {
      relations_[it->second] = {std::move(prop), std::move(matrix)};
      return;
    }
    index_.emplace(std::move(*key), relations_.size());
  }
  relations_.push_back({std::move(prop), std::move(matrix)});
}

void KripkeModel::erase_relation(std::span<const std::uint8_t> key) {
  const auto it = index_.find(std::vector<std::uint8_t>(key.begin(), key.end()));
  if (it == index_.end()) return;
  const std::size_t pos = it->second;
  relations_.erase(relations_.begin() + static_cast<std::ptrdiff_t>(pos));
  index_.erase(it);
  for (auto& [k, i] : index_) {
    if (i > pos) --i;
  }
}

const Matrix* KripkeModel::find_relation(std::span<const std::uint8_t> key) const {
  const auto it = index_.find(std::vector<std::uint8_t>(key.begin(), key.end()));
  return it == index_.end() ? nullptr : &relations_[it->second].matrix;
}

bool KripkeModel::operator==(const KripkeModel& o) const {
  if (scale_ != o.scale_ || worlds_ != o.worlds_ || vars_ != o.vars_ ||
      valuation_ != o.valuation_ || default_ != o.default_ ||
      relations_.size() != o.relations_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (!(relations_[i].prop == o.relations_[i].prop) ||
        !(relations_[i].matrix == o.relations_[i].matrix)) {
      return false;
    }
  }
  return true;
}

ModelEvaluator::ModelEvaluator(const KripkeModel& model)
    : LaneEvaluator(model.scale(), model.world_count()), model_(model) {}

Lanes ModelEvaluator::variable(const Formula& var) {
  const auto idx = model_.var_index(var.name());
  if (!idx) throw EvalError("undeclared variable '" + var.name() + "'");
  const auto vals = model_.var_values(*idx);
  for (WorldId w = 0; w < vals.size(); ++w) {
    if (vals[w] > top()) {
      throw EvalError("no valid value for '" + var.name() + "' at world '" + model_.worlds()[w] +
                      "'");
    }
  }
  return {vals.begin(), vals.end()};
}

Lanes ModelEvaluator::conditional(const Formula& cond) {
  const Lanes& antecedent = values(cond.lhs());
  const Lanes& consequent = values(cond.rhs());
  const auto& kt = kernels::active();
  Lanes out(lanes());
  if (const Matrix* r = model_.find_relation(antecedent)) {
    if (r->size() != lanes()) throw EvalError("relation matrix does not match the world count");
    for (WorldId x = 0; x < lanes(); ++x) out[x] = kt.implication_infimum(top(), r->row(x), consequent);
    return out;
  }
  const auto fallback = model_.default_relation();
  if (!fallback) {
    std::string cells;
    const Proposition p = Proposition::from_values(antecedent, scale());
    for (const auto& cell : p.cells) {
      cells += cells.empty() ? "{" : ", {";
      for (std::size_t i = 0; i < cell.size(); ++i) {
        cells += (i ? "," : "") + model_.worlds()[cell[i]];
      }
      cells += "}";
    }
    throw MissingRelation("no relation stored for proposition (" + cells + ")", antecedent);
  }
  const Lanes row(lanes(), *fallback);
  const kernels::Lane value = kt.implication_infimum(top(), row, consequent);
  std::fill(out.begin(), out.end(), value);
  return out;
}

TruthValue eval(const KripkeModel& model, WorldId x, const Formula& f) {
  if (x >= model.world_count()) throw EvalError("world index out of range");
  ModelEvaluator ev(model);
  return {ev.values(f)[x], model.scale()};
}

Lanes eval_worlds(const KripkeModel& model, const Formula& f) {
  ModelEvaluator ev(model);
  return ev.values(f);
}

Proposition proposition_of(const KripkeModel& model, const Formula& f) {
  return Proposition::from_values(eval_worlds(model, f), model.scale());
}

bool valid_in_model(const KripkeModel& model, const Formula& f) {
  ModelEvaluator ev(model);
  return kernels::active().all_top(model.top(), ev.values(f));
}

bool entails_in_model(const KripkeModel& model, std::span<const Formula> sigma, const Formula& f) {
  ModelEvaluator ev(model);
  std::vector<bool> premises_hold(model.world_count(), true);
  for (const Formula& s : sigma) {
    const Lanes& v = ev.values(s);
    for (WorldId w = 0; w < v.size(); ++w) premises_hold[w] = premises_hold[w] && v[w] == model.top();
  }
  const Lanes& goal = ev.values(f);
  for (WorldId w = 0; w < goal.size(); ++w) {
    if (premises_hold[w] && goal[w] != model.top()) return false;
  }
  return true;
}

std::vector<FidViolation> check_fid(const KripkeModel& model) {
  std::vector<FidViolation> out;
  const std::size_t n = model.world_count();
  const auto& rels = model.relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const auto cells = rels[r].prop.assignment(n, model.scale());
    if (!cells || rels[r].matrix.size() != n) continue;
    for (WorldId x = 0; x < n; ++x) {
      for (WorldId y = 0; y < n; ++y) {
        const std::uint8_t access = rels[r].matrix.at(x, y);
        if (access > model.top()) continue;
        if ((*cells)[y] < access) out.push_back({r, x, y, access, (*cells)[y]});
      }
    }
  }
  return out;
}

std::vector<std::string> validate_model(const KripkeModel& model) {
  std::vector<std::string> out;
  const std::size_t n = model.world_count();
  const auto& worlds = model.worlds();
  const int top = model.top();
  if (n == 0) out.emplace_back("model has no worlds");
  if (std::set<std::string>(worlds.begin(), worlds.end()).size() != n) {
    out.emplace_back("duplicate world names");
  }
  const auto& vars = model.vars();
  if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size()) {
    out.emplace_back("duplicate variable names");
  }
  for (const std::string& v : vars) {
    if (v == kReservedVar) out.emplace_back("variable name '" + v + "' is reserved");
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    for (WorldId w = 0; w < n; ++w) {
      const std::uint8_t val = model.value(v, w);
      if (val == kUnset) {
        out.push_back("valuation missing for (" + vars[v] + ", " + worlds[w] + ")");
      } else if (val > top) {
        out.push_back("valuation of (" + vars[v] + ", " + worlds[w] + ") = " +
                      std::to_string(val) + " exceeds " + std::to_string(top));
      }
    }
  }
  std::set<std::vector<std::uint8_t>> keys;
  const auto& rels = model.relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const std::string tag = "relation " + std::to_string(r) + ": ";
    const auto& cells = rels[r].prop.cells;
    if (cells.size() != static_cast<std::size_t>(model.scale())) {
      out.push_back(tag + "proposition has " + std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(model.scale()));
    }
    std::vector<int> hits(n, 0);
    for (const auto& cell : cells) {
      for (WorldId w : cell) {
        if (w < n) ++hits[w];
      }
    }
    for (WorldId w = 0; w < n; ++w) {
      if (hits[w] > 1) out.push_back(tag + "world '" + worlds[w] + "' lies in several cells");
      if (hits[w] == 0) out.push_back(tag + "world '" + worlds[w] + "' lies in no cell");
    }
    if (auto key = rels[r].prop.assignment(n, model.scale()); key && !keys.insert(*key).second) {
      out.push_back(tag + "duplicate proposition");
    }
    const Matrix& mx = rels[r].matrix;
    if (mx.size() != n) {
      out.push_back(tag + "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
      continue;
    }
    for (WorldId x = 0; x < n; ++x) {
      for (WorldId y = 0; y < n; ++y) {
        const std::uint8_t v = mx.at(x, y);
        if (v == kUnset) {
          out.push_back(tag + "entry (" + worlds[x] + ", " + worlds[y] + ") missing");
        } else if (v > top) {
          out.push_back(tag + "entry (" + worlds[x] + ", " + worlds[y] + ") = " +
                        std::to_string(v) + " exceeds " + std::to_string(top));
        }
      }
    }
  }
  if (const auto d = model.default_relation(); d && *d > top) {
    out.push_back("default relation " + std::to_string(*d) + " exceeds " + std::to_string(top));
  }
  return out;
}

} // namespace lcr
