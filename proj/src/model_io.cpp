#include "lcr/model_io.hpp"

#include <fstream>
#include <sstream>

namespace lcr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::uint8_t numerator_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(where + ": numerator must be an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 0 || n >= kUnset) throw FormatError(where + ": numerator " + std::to_string(n) + " out of range");
  return static_cast<std::uint8_t>(n);
}

std::vector<std::string> name_list(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw FormatError(std::string("\"") + field + "\" must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& v : doc[field]) {
    if (!v.is_string()) throw FormatError(std::string("\"") + field + "\" must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

WorldId world_ref(const KripkeModel& m, const std::string& name, const std::string& where) {
  const auto w = m.world_index(name);
  if (!w) throw FormatError(where + ": unknown world '" + name + "'");
  return *w;
}

} // namespace

ordered_json model_to_json(const KripkeModel& model) {
  ordered_json doc;
  const auto& worlds = model.worlds();
  doc["m"] = model.scale();
  doc["worlds"] = worlds;
  doc["vars"] = model.vars();
  ordered_json valuation = ordered_json::object();
  for (std::size_t v = 0; v < model.vars().size(); ++v) {
    ordered_json row = ordered_json::object();
    for (WorldId w = 0; w < worlds.size(); ++w) {
      if (model.value(v, w) != kUnset) row[worlds[w]] = model.value(v, w);
    }
    valuation[model.vars()[v]] = std::move(row);
  }
  doc["valuation"] = std::move(valuation);
  ordered_json rels = ordered_json::array();
  for (const Relation& r : model.relations()) {
    ordered_json prop = ordered_json::array();
    for (const auto& cell : r.prop.cells) {
      ordered_json names = ordered_json::array();
      for (WorldId w : cell) names.push_back(worlds.at(w));
      prop.push_back(std::move(names));
    }
    ordered_json matrix = ordered_json::object();
    for (WorldId x = 0; x < r.matrix.size(); ++x) {
      ordered_json row = ordered_json::object();
      for (WorldId y = 0; y < r.matrix.size(); ++y) {
        if (r.matrix.at(x, y) != kUnset) row[worlds.at(y)] = r.matrix.at(x, y);
      }
      matrix[worlds.at(x)] = std::move(row);
    }
    rels.push_back({{"prop", std::move(prop)}, {"matrix", std::move(matrix)}});
  }
  doc["relations"] = std::move(rels);
  if (const auto d = model.default_relation()) {
    doc["default_relation"] = *d;
  } else {
    doc["default_relation"] = "error";
  }
  return doc;
}

KripkeModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("model document must be a JSON object");
  if (!doc.contains("m") || !doc["m"].is_number_integer()) throw FormatError("\"m\" must be an integer");
  const auto m = doc["m"].get<std::int64_t>();
  if (m < 2 || m > kMaxScale) throw FormatError("\"m\" out of range: " + std::to_string(m));
  KripkeModel model(static_cast<int>(m), name_list(doc, "worlds"), name_list(doc, "vars"));

  if (doc.contains("valuation")) {
    const json& val = doc["valuation"];
    if (!val.is_object()) throw FormatError("\"valuation\" must be an object");
    for (const auto& [var, row] : val.items()) {
      const auto v = model.var_index(var);
      if (!v) throw FormatError("valuation: undeclared variable '" + var + "'");
      if (!row.is_object()) throw FormatError("valuation of '" + var + "' must be an object");
      for (const auto& [world, num] : row.items()) {
        const std::string where = "valuation[" + var + "][" + world + "]";
        model.set_value(*v, world_ref(model, world, where), numerator_field(num, where));
      }
    }
  }

  if (doc.contains("relations")) {
    const json& rels = doc["relations"];
    if (!rels.is_array()) throw FormatError("\"relations\" must be an array");
    const std::size_t n = model.world_count();
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const std::string where = "relations[" + std::to_string(r) + "]";
      const json& rel = rels[r];
      if (!rel.is_object() || !rel.contains("prop") || !rel["prop"].is_array()) {
        throw FormatError(where + ": needs a \"prop\" array");
      }
      Proposition prop;
      for (const auto& cell : rel["prop"]) {
        if (!cell.is_array()) throw FormatError(where + ": each cell must be an array of worlds");
        std::vector<WorldId> ids;
        for (const auto& w : cell) {
          if (!w.is_string()) throw FormatError(where + ": world names must be strings");
          ids.push_back(world_ref(model, w.get<std::string>(), where));
        }
        prop.cells.push_back(std::move(ids));
      }
      Matrix matrix(n, kUnset);
      if (!rel.contains("matrix") || !rel["matrix"].is_object()) {
        throw FormatError(where + ": needs a \"matrix\" object");
      }
      for (const auto& [from, row] : rel["matrix"].items()) {
        const WorldId x = world_ref(model, from, where);
        if (!row.is_object()) throw FormatError(where + ": matrix rows must be objects");
        for (const auto& [to, num] : row.items()) {
          const WorldId y = world_ref(model, to, where);
          matrix.set(x, y, numerator_field(num, where + ".matrix[" + from + "][" + to + "]"));
        }
      }
      model.set_relation(std::move(prop), std::move(matrix));
    }
  }

  if (doc.contains("default_relation")) {
    const json& d = doc["default_relation"];
    if (d.is_string() && d.get<std::string>() == "error") {
      model.set_default_relation(std::nullopt);
    } else if (d.is_number_integer()) {
      model.set_default_relation(numerator_field(d, "default_relation"));
    } else {
      throw FormatError("\"default_relation\" must be \"error\" or a numerator");
    }
  }
  return model;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

KripkeModel load_model(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

void save_model(const std::filesystem::path& path, const ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

} // namespace lcr
