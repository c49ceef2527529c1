#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lcr/model.hpp"

namespace lcr {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Model documents:
//   { "m": int, "worlds": [name...], "vars": [name...],
//     "valuation": { var: { world: numerator } },
//     "relations": [ { "prop": [[world...] x m], "matrix": { world: { world: numerator } } } ],
//     "default_relation": "error" | numerator }
// Missing valuation or matrix entries load as kUnset and are reported by
// validate_model; unknown names and wrongly typed fields throw FormatError.
nlohmann::ordered_json model_to_json(const KripkeModel& model);
KripkeModel model_from_json(const nlohmann::json& doc);

KripkeModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

/// Reads a whole file; FormatError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

} // namespace lcr
