#pragma once

#include <filesystem>

#include <json.hpp>

#include "lcr/proof.hpp"

namespace lcr {

// Derivation documents:
//   { "m": int, "premises": [formula...], "lid": bool (optional),
//     "lines": [ { "formula": text, "rule": name, "args": {...} } ] }
// args by rule:
//   Premise  {"index": k}            1-based premise number
//   MP       {"lines": [i, j]}       line j must read  line_i -> this
//   RCEA     {"line": i}
//   RCEC     {"line": i}
//   Ra       {"a": "k/d", "phi": text, "gammas": [text x m], "gamma": text,
//             "lines": [m line numbers, b = 1 first, descending]}
//   RaGen    {"a": "k/d", "a_list": ["k/d"...], "phi": text, "chis": [text...],
//             "chi": text, "lines": [m line numbers as for Ra]}
// LTaut, A1, A2, A3, LID take no args.
struct DerivationDocument {
  Derivation derivation;
  bool lid = false;
};

DerivationDocument derivation_from_json(const nlohmann::json& doc);
DerivationDocument load_derivation(const std::filesystem::path& path);

/// "k/d" or "k".
Rational parse_rational(const std::string& text);

} // namespace lcr
