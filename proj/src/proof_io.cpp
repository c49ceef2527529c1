#include "lcr/proof_io.hpp"

#include <charconv>

#include "lcr/model_io.hpp"
#include "lcr/parser.hpp"

namespace lcr {

using nlohmann::json;

namespace {

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

Formula formula_field(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw FormatError(ctx + "\"" + key + "\" must be a formula string");
  }
  try {
    return parse(obj[key].get<std::string>());
  } catch (const ParseError& e) {
    throw FormatError(ctx + "\"" + key + "\": " + e.what());
  }
}

std::vector<Formula> formula_list(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw FormatError(ctx + "\"" + key + "\" must be an array of formula strings");
  }
  std::vector<Formula> out;
  for (const auto& v : obj[key]) {
    if (!v.is_string()) throw FormatError(ctx + "\"" + key + "\" must hold strings");
    try {
      out.push_back(parse(v.get<std::string>()));
    } catch (const ParseError& e) {
      throw FormatError(ctx + "\"" + key + "\": " + e.what());
    }
  }
  return out;
}

std::size_t line_number(const json& v, const std::string& ctx) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw FormatError(ctx + "line references must be positive integers");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> line_list(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw FormatError(ctx + "\"" + key + "\" must be an array of line numbers");
  }
  std::vector<std::size_t> out;
  for (const auto& v : obj[key]) out.push_back(line_number(v, ctx));
  return out;
}

Rational rational_field(const json& v, const std::string& ctx) {
  if (!v.is_string()) throw FormatError(ctx + "degrees are written as \"k/d\" strings");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(ctx + e.what());
  }
}

RaArgs ra_args(const json& args, bool general, const std::string& ctx) {
  if (!args.contains("a")) throw FormatError(ctx + "missing \"a\"");
  const char* list_key = general ? "chis" : "gammas";
  const char* goal_key = general ? "chi" : "gamma";
  RaArgs ra{rational_field(args["a"], ctx), formula_field(args, "phi", ctx),
            formula_list(args, list_key, ctx), formula_field(args, goal_key, ctx), {},
            line_list(args, "lines", ctx)};
  if (general) {
    if (!args.contains("a_list") || !args["a_list"].is_array()) {
      throw FormatError(ctx + "RaGen needs an \"a_list\" array");
    }
    for (const auto& d : args["a_list"]) ra.degrees.push_back(rational_field(d, ctx));
  }
  return ra;
}

} // namespace

Rational parse_rational(const std::string& text) {
  std::int64_t num = 0;
  std::int64_t den = 1;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  auto [q, ec] = std::from_chars(p, end, num);
  if (ec != std::errc{} || q == p) throw std::invalid_argument("malformed rational '" + text + "'");
  if (q != end) {
    if (*q != '/') throw std::invalid_argument("malformed rational '" + text + "'");
    auto [r, ec2] = std::from_chars(q + 1, end, den);
    if (ec2 != std::errc{} || r != end || den == 0) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
  }
  if (num < 0 || num > den) throw std::invalid_argument("rational '" + text + "' outside [0,1]");
  return Rational(num, den);
}

DerivationDocument derivation_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("derivation must be a JSON object");
  DerivationDocument out;
  Derivation& d = out.derivation;
  if (!doc.contains("m") || !doc["m"].is_number_integer()) throw FormatError("\"m\" must be an integer");
  d.m = doc["m"].get<int>();
  if (d.m < 2 || d.m > 128) throw FormatError("\"m\" out of range");
  if (doc.contains("premises")) d.premises = formula_list(doc, "premises", "");
  if (doc.contains("lid")) {
    if (!doc["lid"].is_boolean()) throw FormatError("\"lid\" must be a boolean");
    out.lid = doc["lid"].get<bool>();
  }
  if (!doc.contains("lines") || !doc["lines"].is_array()) throw FormatError("\"lines\" must be an array");
  std::size_t n = 0;
  for (const json& line : doc["lines"]) {
    const std::string ctx = where(++n);
    if (!line.is_object()) throw FormatError(ctx + "must be an object");
    Formula f = formula_field(line, "formula", ctx);
    if (!line.contains("rule") || !line["rule"].is_string()) throw FormatError(ctx + "missing \"rule\"");
    const auto rule = rule_from_name(line["rule"].get<std::string>());
    if (!rule) throw FormatError(ctx + "unknown rule '" + line["rule"].get<std::string>() + "'");
    const json args = line.contains("args") ? line["args"] : json::object();
    if (!args.is_object()) throw FormatError(ctx + "\"args\" must be an object");
    Justification why{*rule, 0, {}, std::nullopt};
    switch (*rule) {
    case Rule::Premise:
      if (!args.contains("index")) throw FormatError(ctx + "Premise needs \"index\"");
      why.premise = line_number(args["index"], ctx);
      break;
    case Rule::MP: why.lines = line_list(args, "lines", ctx); break;
    case Rule::RCEA:
    case Rule::RCEC:
      if (!args.contains("line")) throw FormatError(ctx + "needs \"line\"");
      why.lines = {line_number(args["line"], ctx)};
      break;
    case Rule::Ra:
    case Rule::RaGen: why.ra = ra_args(args, *rule == Rule::RaGen, ctx); break;
    default: break;
    }
    d.lines.push_back({std::move(f), std::move(why)});
  }
  return out;
}

DerivationDocument load_derivation(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return derivation_from_json(doc);
}

} // namespace lcr
