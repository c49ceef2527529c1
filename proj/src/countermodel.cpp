#include <algorithm>
#include <thread>
#include <unordered_set>

#include "lcr/search.hpp"
#include "lcr/syntax.hpp"

namespace lcr {

namespace {

struct SlotResult {
  std::optional<Countermodel> found;
  std::uint64_t used = 0;
  bool capped = false;
};

class Enumerator {
public:
  Enumerator(const Formula& f, int m, std::vector<std::uint8_t> values, bool require_fid)
      : f_(f), m_(m), top_(static_cast<std::uint8_t>(m - 1)), values_(std::move(values)),
        require_fid_(require_fid), vars_(variables(f)) {
    std::unordered_set<Formula, FormulaHash> distinct;
    for (const Formula& g : subformula_closure(f)) {
      if (g.kind() == Kind::Cond && distinct.insert(g.lhs()).second) antecedents_.push_back(g.lhs());
    }
  }

  std::size_t var_count() const { return vars_.size(); }

  // Valuation number `index` over `n` worlds: digits var-major, world-minor,
  // the last (var, world) pair varying fastest.
  SlotResult run_valuation(std::size_t n, std::uint64_t index, std::uint64_t cap) const {
    std::vector<std::string> worlds;
    for (std::size_t w = 0; w < n; ++w) worlds.push_back("w" + std::to_string(w));
    KripkeModel model(m_, std::move(worlds), vars_);
    model.set_default_relation(std::uint8_t{0});
    for (std::size_t slot = vars_.size() * n; slot-- > 0;) {
      model.set_value(slot / n, slot % n, static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(m_)));
      index /= static_cast<std::uint64_t>(m_);
    }
    SlotResult out;
    assign(model, 0, cap, out);
    return out;
  }

private:
  // Returns true once a countermodel is found or the cap is hit.
  bool assign(KripkeModel& model, std::size_t idx, std::uint64_t cap, SlotResult& out) const {
    if (idx == antecedents_.size()) {
      if (out.used >= cap) {
        out.capped = true;
        return true;
      }
      ++out.used;
      const Lanes v = eval_worlds(model, f_);
      for (WorldId w = 0; w < v.size(); ++w) {
        if (v[w] != top_) {
          out.found = Countermodel{model, w, TruthValue(v[w], m_)};
          return true;
        }
      }
      return false;
    }
    const Lanes key = eval_worlds(model, antecedents_[idx]);
    if (model.find_relation(key)) return assign(model, idx + 1, cap, out);

    const std::size_t n = model.world_count();
    const Proposition prop = Proposition::from_values(key, m_);
    std::vector<std::size_t> digits(n * n, 0);
    Matrix matrix(n, values_.front());
    while (true) {
      if (!require_fid_ || satisfies_fid(matrix, key)) {
        model.set_relation(prop, matrix);
        if (assign(model, idx + 1, cap, out)) return true;
      }
      // odometer, last entry fastest
      std::size_t pos = digits.size();
      while (pos > 0) {
        --pos;
        if (++digits[pos] < values_.size()) break;
        digits[pos] = 0;
      }
      for (std::size_t i = pos; i < digits.size(); ++i) {
        matrix.set(i / n, i % n, values_[digits[i]]);
      }
      if (std::all_of(digits.begin(), digits.end(), [](std::size_t d) { return d == 0; })) break;
    }
    model.erase_relation(key);
    return false;
  }

  static bool satisfies_fid(const Matrix& matrix, const Lanes& cells) {
    for (WorldId x = 0; x < matrix.size(); ++x) {
      for (WorldId y = 0; y < matrix.size(); ++y) {
        if (matrix.at(x, y) > cells[y]) return false;
      }
    }
    return true;
  }

  const Formula& f_;
  int m_;
  std::uint8_t top_;
  std::vector<std::uint8_t> values_;
  bool require_fid_;
  std::vector<std::string> vars_;
  std::vector<Formula> antecedents_; // inner antecedents first
};

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) throw SearchError("too many valuations to enumerate");
    r *= base;
  }
  return r;
}

} // namespace

SearchResult countermodel_search(const Formula& f, int m, const SearchBounds& bounds,
                                 bool require_fid) {
  if (m < 2 || m > kMaxScale) throw SearchError("scale out of range: " + std::to_string(m));
  if (bounds.max_worlds < 1) throw SearchError("max_worlds must be at least 1");
  if (conditional_depth(f) > kMaxSearchDepth) {
    throw SearchError("conditional nesting deeper than " + std::to_string(kMaxSearchDepth));
  }
  std::vector<std::uint8_t> values = bounds.relation_values;
  if (values.empty()) {
    for (int v = m - 1; v >= 0; --v) values.push_back(static_cast<std::uint8_t>(v));
  }
  for (std::uint8_t v : values) {
    if (v > m - 1) throw SearchError("relation value " + std::to_string(v) + " outside the scale");
  }

  const Enumerator en(f, m, values, require_fid);
  const unsigned threads =
      std::max(1u, bounds.threads ? bounds.threads : std::thread::hardware_concurrency());
  SearchResult result;

  for (std::size_t n = 1; n <= bounds.max_worlds; ++n) {
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(m), en.var_count() * n);
    const std::uint64_t chunk = std::uint64_t{64} * threads;
    for (std::uint64_t base = 0; base < total; base += chunk) {
      const std::uint64_t count = std::min(chunk, total - base);
      const std::uint64_t remaining = bounds.budget - result.candidates;
      std::vector<SlotResult> slots(count);
      auto work = [&](unsigned t) {
        for (std::uint64_t i = t; i < count; i += threads) {
          slots[i] = en.run_valuation(n, base + i, remaining);
        }
      };
      if (threads == 1 || count == 1) {
        work(0);
      } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      }
      // Replay in canonical order so the answer matches a serial run.
      std::uint64_t spent = 0;
      for (SlotResult& s : slots) {
        if (s.found && spent + s.used <= remaining) {
          result.candidates += spent + s.used;
          result.status = SearchStatus::Found;
          result.countermodel = std::move(s.found);
          return result;
        }
        if (s.capped || spent + s.used > remaining) {
          result.candidates = bounds.budget;
          result.status = SearchStatus::BudgetExhausted;
          return result;
        }
        spent += s.used;
      }
      result.candidates += spent;
    }
  }
  result.status = SearchStatus::NoneWithinBounds;
  return result;
}

} // namespace lcr
