#include <map>
#include <unordered_map>
#include <unordered_set>

#include "lcr/lane_eval.hpp"
#include "lcr/parser.hpp"
#include "lcr/search.hpp"
#include "lcr/syntax.hpp"

namespace lcr {

namespace {

constexpr std::size_t kMaxTableRows = std::size_t{1} << 26;

struct Atoms {
  std::vector<std::string> vars; // sorted
  std::vector<Formula> conditionals;
};

void collect(const Formula& f, bool abstract, Atoms& out, std::unordered_set<const void*>& seen,
             std::unordered_set<Formula, FormulaHash>& conds, std::map<std::string, int>& names) {
  if (!seen.insert(f.node_id()).second) return;
  if (f.kind() == Kind::Cond) {
    if (!abstract) {
      throw SearchError("formula contains '=>' and conditional abstraction is off: " + print(f));
    }
    if (conds.insert(f).second) out.conditionals.push_back(f);
    return;
  }
  if (f.kind() == Kind::Var && f.name() != kReservedVar) names.emplace(f.name(), 0);
  for (int i = 0; i < f.arity(); ++i) collect(f.child(i), abstract, out, seen, conds, names);
}

class TruthTable : public LaneEvaluator {
public:
  TruthTable(int m, const Atoms& atoms, std::size_t rows) : LaneEvaluator(m, rows) {
    const std::size_t k = atoms.vars.size() + atoms.conditionals.size();
    std::size_t stride = rows;
    for (std::size_t i = 0; i < k; ++i) {
      stride /= static_cast<std::size_t>(m);
      Lanes col(rows);
      for (std::size_t row = 0; row < rows; ++row) {
        col[row] = static_cast<kernels::Lane>((row / stride) % static_cast<std::size_t>(m));
      }
      if (i < atoms.vars.size()) {
        var_cols_.emplace(atoms.vars[i], std::move(col));
      } else {
        cond_cols_.emplace(atoms.conditionals[i - atoms.vars.size()], std::move(col));
      }
    }
  }

protected:
  Lanes variable(const Formula& var) override { return var_cols_.at(var.name()); }
  Lanes conditional(const Formula& cond) override { return cond_cols_.at(cond); }

private:
  std::unordered_map<std::string, Lanes> var_cols_;
  std::unordered_map<Formula, Lanes, FormulaHash> cond_cols_;
};

} // namespace

TautologyReport check_L_tautology(const Formula& f, int m, bool abstract_conditionals) {
  Atoms atoms;
  std::unordered_set<const void*> seen;
  std::unordered_set<Formula, FormulaHash> conds;
  std::map<std::string, int> names;
  collect(f, abstract_conditionals, atoms, seen, conds, names);
  for (const auto& [name, unused] : names) atoms.vars.push_back(name);

  const std::size_t k = atoms.vars.size() + atoms.conditionals.size();
  std::size_t rows = 1;
  for (std::size_t i = 0; i < k; ++i) {
    rows *= static_cast<std::size_t>(m);
    if (rows > kMaxTableRows) {
      throw SearchError("truth table too large: " + std::to_string(k) + " atoms at m=" +
                        std::to_string(m));
    }
  }

  TruthTable table(m, atoms, rows);
  const Lanes& result = table.values(f);

  TautologyReport report;
  report.atoms = atoms.vars;
  for (const Formula& c : atoms.conditionals) report.atoms.push_back(print(c));
  const auto top = static_cast<kernels::Lane>(m - 1);
  if (kernels::active().all_top(top, result)) return report;

  report.holds = false;
  std::size_t row = 0;
  while (result[row] == top) ++row;
  report.value = result[row];
  std::size_t stride = rows;
  for (std::size_t i = 0; i < k; ++i) {
    stride /= static_cast<std::size_t>(m);
    report.counterexample.push_back(static_cast<std::uint8_t>((row / stride) % static_cast<std::size_t>(m)));
  }
  return report;
}

bool is_L_tautology(const Formula& f, int m, bool abstract_conditionals) {
  return check_L_tautology(f, m, abstract_conditionals).holds;
}

} // namespace lcr
