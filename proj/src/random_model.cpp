#include <random>

#include "lcr/search.hpp"

namespace lcr {

// Draws use `rng() % bound` rather than std::uniform_int_distribution so the
// output is identical across standard libraries (golden files depend on it).
KripkeModel random_model(std::uint64_t seed, int m, std::size_t n_worlds,
                         const std::vector<std::string>& vars, const RandomModelOptions& options) {
  if (n_worlds < 1) throw SearchError("random model needs at least one world");
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::uint64_t bound) { return static_cast<std::uint8_t>(rng() % bound); };

  std::vector<std::string> worlds;
  for (std::size_t w = 0; w < n_worlds; ++w) worlds.push_back("w" + std::to_string(w));
  KripkeModel model(m, std::move(worlds), vars);
  const auto scale = static_cast<std::uint64_t>(m);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    for (WorldId w = 0; w < n_worlds; ++w) model.set_value(v, w, draw(scale));
  }

  auto add_relation = [&](const std::vector<std::uint8_t>& key) {
    Matrix mx(n_worlds, 0);
    for (WorldId x = 0; x < n_worlds; ++x) {
      for (WorldId y = 0; y < n_worlds; ++y) {
        std::uint8_t v = 0;
        if (options.crisp_relations) {
          v = draw(2) ? model.top() : 0;
          if (options.fid && v > key[y]) v = 0;
        } else {
          v = draw(options.fid ? std::uint64_t{key[y]} + 1 : scale);
        }
        mx.set(x, y, v);
      }
    }
    if (!model.find_relation(key)) model.set_relation(Proposition::from_values(key, m), std::move(mx));
  };

  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto vals = model.var_values(v);
    add_relation({vals.begin(), vals.end()});
  }
  for (std::size_t r = 0; r < options.extra_relations; ++r) {
    std::vector<std::uint8_t> key(n_worlds);
    for (auto& c : key) c = draw(scale);
    add_relation(key);
  }
  model.set_default_relation(options.default_relation);
  return model;
}

KripkeModel random_model(std::uint64_t seed, int m, std::size_t n_worlds,
                         const std::vector<std::string>& vars, std::size_t extra_relations) {
  RandomModelOptions options;
  options.extra_relations = extra_relations;
  return random_model(seed, m, n_worlds, vars, options);
}

} // namespace lcr
