#include <algorithm>
#include <map>

#include "lcr/search.hpp"
#include "lcr/syntax.hpp"

namespace lcr {

Filtration filtrate(const KripkeModel& model, std::span<const Formula> sigma) {
  if (!is_subformula_closed(sigma)) throw SearchError("filtration set is not closed under subformulae");

  ModelEvaluator ev(model);
  const std::size_t n = model.world_count();
  std::vector<const Lanes*> table;
  for (const Formula& s : sigma) table.push_back(&ev.values(s));

  std::map<std::vector<std::uint8_t>, WorldId> class_by_signature;
  std::vector<WorldId> class_of(n);
  std::vector<WorldId> representative;
  for (WorldId w = 0; w < n; ++w) {
    std::vector<std::uint8_t> sig;
    sig.reserve(table.size());
    for (const Lanes* col : table) sig.push_back((*col)[w]);
    const auto [it, fresh] = class_by_signature.emplace(std::move(sig), representative.size());
    if (fresh) representative.push_back(w);
    class_of[w] = it->second;
  }

  std::vector<std::string> vars;
  for (const std::string& v : model.vars()) {
    if (std::any_of(sigma.begin(), sigma.end(),
                    [&](const Formula& s) { return s.kind() == Kind::Var && s.name() == v; })) {
      vars.push_back(v);
    }
  }
  std::vector<std::string> names;
  for (WorldId r : representative) names.push_back("[" + model.worlds()[r] + "]");
  KripkeModel out(model.scale(), std::move(names), vars);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const std::size_t src = *model.var_index(vars[v]);
    for (WorldId c = 0; c < representative.size(); ++c) out.set_value(v, c, model.value(src, representative[c]));
  }

  const std::size_t k = representative.size();
  for (const Formula& s : sigma) {
    if (s.kind() != Kind::Cond) continue;
    const Lanes& key = ev.values(s.lhs());
    const Matrix* r = model.find_relation(key);
    if (!r) continue;
    std::vector<std::uint8_t> image(k);
    for (WorldId c = 0; c < k; ++c) image[c] = key[representative[c]];
    if (out.find_relation(image)) continue;
    Matrix lifted(k, 0);
    for (WorldId x = 0; x < n; ++x) {
      for (WorldId y = 0; y < n; ++y) {
        const WorldId cx = class_of[x];
        const WorldId cy = class_of[y];
        lifted.set(cx, cy, std::max(lifted.at(cx, cy), r->at(x, y)));
      }
    }
    out.set_relation(Proposition::from_values(image, model.scale()), std::move(lifted));
  }
  out.set_default_relation(model.default_relation());
  return {std::move(out), std::move(class_of)};
}

std::vector<Discrepancy> check_preservation(const KripkeModel& original, const Filtration& quotient,
                                            std::span<const Formula> sigma) {
  ModelEvaluator before(original);
  ModelEvaluator after(quotient.model);
  std::vector<Discrepancy> out;
  for (const Formula& s : sigma) {
    const Lanes& a = before.values(s);
    const Lanes& b = after.values(s);
    for (WorldId w = 0; w < a.size(); ++w) {
      const std::uint8_t lifted = b[quotient.class_of[w]];
      if (a[w] != lifted) out.push_back({s, w, a[w], lifted});
    }
  }
  return out;
}

} // namespace lcr
