#include "lcr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "lcr/model_io.hpp"
#include "lcr/parser.hpp"
#include "lcr/proof_io.hpp"
#include "lcr/search.hpp"
#include "lcr/syntax.hpp"

namespace lcr::cli {

using nlohmann::ordered_json;

namespace {

// Raised for bad input data; maps to kMalformed.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = kOk;
  ordered_json doc;
};

ordered_json status(const char* s) {
  ordered_json j;
  j["status"] = s;
  return j;
}

std::string value_str(std::uint8_t num, int m) { return TruthValue(num, m).reduced_str(); }

ordered_json ast_json(const Formula& f) {
  ordered_json j;
  j["kind"] = kind_name(f.kind());
  if (f.kind() == Kind::Var) j["name"] = f.name();
  if (f.kind() == Kind::J || f.kind() == Kind::I) j["index"] = f.index().str();
  const int n = arity(f.kind());
  if (n > 0) {
    j["args"] = ordered_json::array();
    for (int i = 0; i < n; ++i) j["args"].push_back(ast_json(f.child(i)));
  }
  return j;
}

void render_pretty(const ordered_json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render_pretty(v, out, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_structured() ? v.dump() : scalar(v)) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render_pretty(v, out, indent + 2);
      } else {
        out << pad << "- " << scalar(v) << '\n';
      }
    }
  } else {
    out << pad << scalar(j) << '\n';
  }
}

Formula parse_arg(const std::string& text) { return parse(text); }

std::vector<Formula> load_sigma(const std::string& path) {
  return parse_corpus(read_text_file(path));
}

KripkeModel load_checked_model(const std::string& path) {
  KripkeModel model = load_model(path);
  auto problems = validate_model(model);
  if (!problems.empty()) {
    std::string msg = "'" + path + "' is not a well-formed model:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  return model;
}

WorldId world_arg(const KripkeModel& model, const std::string& name) {
  auto w = model.world_index(name);
  if (!w) throw InputError("model has no world '" + name + "'");
  return *w;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw InputError("empty entry in list '" + text + "'");
    items.push_back(item);
  }
  if (items.empty()) throw InputError("empty list");
  return items;
}

// ---------------------------------------------------------------------------

Outcome cmd_parse(const std::string& text) {
  Formula f = parse_arg(text);
  const std::string printed = print(f);
  const bool round_trip = parse(printed) == f;
  Outcome o{round_trip ? kOk : kFails, status(round_trip ? "ok" : "round_trip_failed")};
  o.doc["formula"] = printed;
  o.doc["round_trip"] = round_trip;
  o.doc["conditional_depth"] = conditional_depth(f);
  o.doc["ast"] = ast_json(f);
  return o;
}

Outcome cmd_taut(int m, const std::string& text, bool abstract) {
  Formula f = parse_arg(text);
  TautologyReport r = check_L_tautology(f, m, abstract);
  Outcome o{r.holds ? kOk : kFails, status(r.holds ? "holds" : "fails")};
  o.doc["m"] = m;
  o.doc["formula"] = print(f);
  o.doc["atoms"] = r.atoms;
  if (!r.holds) {
    ordered_json cex = ordered_json::object();
    for (std::size_t i = 0; i < r.atoms.size(); ++i) cex[r.atoms[i]] = value_str(r.counterexample[i], m);
    o.doc["counterexample"] = cex;
    o.doc["value"] = value_str(r.value, m);
  }
  return o;
}

Outcome cmd_eval(const std::string& path, const std::string& world, const std::string& text) {
  KripkeModel model = load_checked_model(path);
  Formula f = parse_arg(text);
  const WorldId w = world_arg(model, world);
  TruthValue v = eval(model, w, f);
  Outcome o{kOk, status("ok")};
  o.doc["world"] = world;
  o.doc["formula"] = print(f);
  o.doc["value"] = v.reduced_str();
  o.doc["numerator"] = v.numerator();
  o.doc["m"] = model.scale();
  return o;
}

ordered_json world_values(const KripkeModel& model, const Lanes& vals, const std::vector<WorldId>& ws) {
  ordered_json arr = ordered_json::array();
  for (WorldId w : ws) {
    arr.push_back({{"world", model.worlds()[w]}, {"value", value_str(vals[w], model.scale())}});
  }
  return arr;
}

Outcome cmd_valid(const std::string& path, const std::string& text) {
  KripkeModel model = load_checked_model(path);
  Formula f = parse_arg(text);
  const Lanes vals = eval_worlds(model, f);
  std::vector<WorldId> bad;
  for (WorldId w = 0; w < vals.size(); ++w) {
    if (vals[w] != model.top()) bad.push_back(w);
  }
  Outcome o{bad.empty() ? kOk : kFails, status(bad.empty() ? "holds" : "fails")};
  o.doc["formula"] = print(f);
  if (!bad.empty()) o.doc["failing_worlds"] = world_values(model, vals, bad);
  return o;
}

Outcome cmd_entails(const std::string& path, const std::string& sigma_path, const std::string& text) {
  KripkeModel model = load_checked_model(path);
  const std::vector<Formula> sigma = load_sigma(sigma_path);
  Formula f = parse_arg(text);
  ModelEvaluator ev(model);
  std::vector<bool> premises_hold(model.world_count(), true);
  for (const Formula& s : sigma) {
    const Lanes& v = ev.values(s);
    for (WorldId w = 0; w < v.size(); ++w) premises_hold[w] = premises_hold[w] && v[w] == model.top();
  }
  const Lanes vals = ev.values(f);
  std::vector<WorldId> bad;
  for (WorldId w = 0; w < vals.size(); ++w) {
    if (premises_hold[w] && vals[w] != model.top()) bad.push_back(w);
  }
  Outcome o{bad.empty() ? kOk : kFails, status(bad.empty() ? "holds" : "fails")};
  o.doc["formula"] = print(f);
  o.doc["sigma_size"] = sigma.size();
  if (!bad.empty()) o.doc["failing_worlds"] = world_values(model, vals, bad);
  return o;
}

std::vector<std::uint8_t> parse_values(const std::string& text, int m) {
  std::vector<std::uint8_t> out;
  for (const std::string& item : split_list(text)) {
    Rational r;
    try {
      r = parse_rational(item);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    const int k = index_numerator(r, m);
    if (std::find(out.begin(), out.end(), k) != out.end()) {
      throw InputError("value '" + item + "' listed twice");
    }
    out.push_back(static_cast<std::uint8_t>(k));
  }
  return out;
}

Outcome cmd_search(int m, std::size_t max_worlds, const std::string& text, bool fid,
                   const std::optional<std::string>& values, std::optional<std::uint64_t> budget,
                   unsigned threads) {
  Formula f = parse_arg(text);
  SearchBounds bounds;
  bounds.max_worlds = max_worlds;
  if (values) bounds.relation_values = parse_values(*values, m);
  if (budget) bounds.budget = *budget;
  bounds.threads = threads;
  SearchResult r = countermodel_search(f, m, bounds, fid);
  Outcome o;
  switch (r.status) {
  case SearchStatus::Found: {
    o = {kFails, status("countermodel")};
    const Countermodel& cm = *r.countermodel;
    o.doc["formula"] = print(f);
    o.doc["witness_world"] = cm.model.worlds()[cm.world];
    o.doc["value"] = cm.value.reduced_str();
    o.doc["candidates"] = r.candidates;
    o.doc["model"] = model_to_json(cm.model);
    return o;
  }
  case SearchStatus::NoneWithinBounds: o = {kOk, status("no_countermodel")}; break;
  case SearchStatus::BudgetExhausted: o = {kBudget, status("budget_exhausted")}; break;
  }
  o.doc["formula"] = print(f);
  o.doc["max_worlds"] = max_worlds;
  o.doc["candidates"] = r.candidates;
  return o;
}

Outcome cmd_filtrate(const std::string& path, const std::string& sigma_path, const std::string& out_path) {
  KripkeModel model = load_checked_model(path);
  const std::vector<Formula> sigma = load_sigma(sigma_path);
  Filtration q = filtrate(model, sigma);
  const auto diffs = check_preservation(model, q, sigma);
  save_model(out_path, model_to_json(q.model));
  Outcome o{diffs.empty() ? kOk : kFails, status(diffs.empty() ? "preserved" : "discrepancies")};
  o.doc["sigma_size"] = sigma.size();
  o.doc["worlds_before"] = model.world_count();
  o.doc["worlds_after"] = q.model.world_count();
  ordered_json map = ordered_json::object();
  for (WorldId w = 0; w < model.world_count(); ++w) map[model.worlds()[w]] = q.model.worlds()[q.class_of[w]];
  o.doc["class_map"] = map;
  ordered_json arr = ordered_json::array();
  for (const auto& d : diffs) {
    arr.push_back({{"formula", print(d.formula)},
                   {"world", model.worlds()[d.world]},
                   {"original", value_str(d.original, model.scale())},
                   {"filtered", value_str(d.filtered, model.scale())}});
  }
  o.doc["discrepancies"] = arr;
  o.doc["out"] = out_path;
  return o;
}

Outcome cmd_fid_check(const std::string& path) {
  KripkeModel model = load_checked_model(path);
  const auto violations = check_fid(model);
  Outcome o{violations.empty() ? kOk : kFails, status(violations.empty() ? "holds" : "fails")};
  ordered_json arr = ordered_json::array();
  for (const auto& v : violations) {
    arr.push_back({{"relation", v.relation},
                   {"from", model.worlds()[v.from]},
                   {"to", model.worlds()[v.to]},
                   {"access", value_str(v.access, model.scale())},
                   {"cell", value_str(v.cell, model.scale())}});
  }
  o.doc["violations"] = arr;
  return o;
}

Outcome cmd_proofcheck(const std::string& path, const std::string& goal_text, bool lid, bool premise_rules) {
  DerivationDocument doc = load_derivation(path);
  Formula goal = parse_arg(goal_text);
  CheckOptions opts;
  opts.allow_lid = lid || doc.lid;
  opts.rules_on_premise_lines = premise_rules;
  Verdict v = check_derivation(doc.derivation, goal, opts);
  Outcome o{v.ok ? kOk : kFails, status(v.ok ? "accepted" : "rejected")};
  o.doc["lines"] = doc.derivation.lines.size();
  o.doc["goal"] = print(goal);
  if (v.error) {
    ordered_json e;
    e["line"] = v.error->line;
    e["rule"] = v.error->rule;
    e["message"] = v.error->message;
    if (v.error->expected) e["expected"] = *v.error->expected;
    if (v.error->found) e["found"] = *v.error->found;
    o.doc["error"] = e;
  }
  return o;
}

Outcome cmd_gen(std::uint64_t seed, int m, std::size_t worlds, const std::string& vars_text,
                const std::string& out_path, bool fid, std::size_t extra) {
  std::vector<std::string> vars = split_list(vars_text);
  RandomModelOptions opts;
  opts.fid = fid;
  opts.extra_relations = extra;
  opts.default_relation = 0;
  KripkeModel model = random_model(seed, m, worlds, vars, opts);
  auto problems = validate_model(model);
  if (!problems.empty()) throw InputError(problems.front());
  save_model(out_path, model_to_json(model));
  Outcome o{kOk, status("ok")};
  o.doc["out"] = out_path;
  o.doc["m"] = m;
  o.doc["worlds"] = worlds;
  o.doc["vars"] = vars;
  o.doc["relations"] = model.relations().size();
  return o;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Łukasiewicz conditional logic toolkit", "lcr"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");

  std::string formula, model_path, world, sigma_path, out_path, file, goal, vars;
  int m = 3;
  bool abstract = false, fid = false, lid = false, premise_rules = false;
  std::size_t max_worlds = 1, worlds = 2, extra = 0;
  std::optional<std::string> values;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  auto add_m = [&m](CLI::App* c) { c->add_option("--m", m, "Number of truth values")->required(); };
  auto add_formula = [&formula](CLI::App* c) { c->add_option("--formula", formula)->required(); };
  auto add_model = [&model_path](CLI::App* c) { c->add_option("--model", model_path)->required(); };

  auto* c_parse = app.add_subcommand("parse", "Parse a formula and echo its syntax tree");
  add_formula(c_parse);

  auto* c_taut = app.add_subcommand("taut", "Truth-table check of the propositional base");
  add_m(c_taut);
  add_formula(c_taut);
  c_taut->add_flag("--abstract-conditionals", abstract, "Treat conditionals as atoms");

  auto* c_eval = app.add_subcommand("eval", "Value of a formula at a world");
  add_model(c_eval);
  c_eval->add_option("--world", world)->required();
  add_formula(c_eval);

  auto* c_valid = app.add_subcommand("valid", "Is the formula 1 at every world");
  add_model(c_valid);
  add_formula(c_valid);

  auto* c_entails = app.add_subcommand("entails", "Local consequence from a set of formulas");
  add_model(c_entails);
  c_entails->add_option("--sigma", sigma_path, "File with one formula per line")->required();
  add_formula(c_entails);

  auto* c_search = app.add_subcommand("search", "Bounded countermodel search");
  add_m(c_search);
  c_search->add_option("--max-worlds", max_worlds)->required()->check(CLI::Range(1, 8));
  add_formula(c_search);
  c_search->add_flag("--fid", fid, "Only models satisfying fid");
  c_search->add_option("--values", values, "Accessibility degrees to try, e.g. 1,1/2,0");
  c_search->add_option("--budget", budget, "Maximum candidate models");
  c_search->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* c_filtrate = app.add_subcommand("filtrate", "Filtrate a model through a formula set");
  add_model(c_filtrate);
  c_filtrate->add_option("--sigma", sigma_path)->required();
  c_filtrate->add_option("--out", out_path)->required();

  auto* c_fid = app.add_subcommand("fid-check", "Report fid violations of a model");
  add_model(c_fid);

  auto* c_proof = app.add_subcommand("proofcheck", "Check a derivation file");
  c_proof->add_option("--file", file)->required();
  c_proof->add_option("--goal", goal)->required();
  c_proof->add_flag("--lid", lid, "Accept the identity axiom f => f");
  c_proof->add_flag("--premise-rules", premise_rules,
                    "Let RCEA, RCEC and Ra cite lines that depend on premises");

  auto* c_gen = app.add_subcommand("gen", "Write a seeded random model");
  c_gen->add_option("--seed", seed)->required();
  add_m(c_gen);
  c_gen->add_option("--worlds", worlds)->required()->check(CLI::Range(1, 64));
  c_gen->add_option("--vars", vars, "Comma-separated variable names")->required();
  c_gen->add_option("--out", out_path)->required();
  c_gen->add_flag("--fid", fid, "Draw relations satisfying fid");
  c_gen->add_option("--extra-relations", extra, "Additional random propositions");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  Outcome result;
  try {
    if (*c_parse) result = cmd_parse(formula);
    else if (*c_taut) result = cmd_taut(m, formula, abstract);
    else if (*c_eval) result = cmd_eval(model_path, world, formula);
    else if (*c_valid) result = cmd_valid(model_path, formula);
    else if (*c_entails) result = cmd_entails(model_path, sigma_path, formula);
    else if (*c_search) result = cmd_search(m, max_worlds, formula, fid, values, budget, threads);
    else if (*c_filtrate) result = cmd_filtrate(model_path, sigma_path, out_path);
    else if (*c_fid) result = cmd_fid_check(model_path);
    else if (*c_proof) result = cmd_proofcheck(file, goal, lid, premise_rules);
    else result = cmd_gen(seed, m, worlds, vars, out_path, fid, extra);
  } catch (const std::exception& e) {
    // Everything the library throws on bad input (parse, format, scale,
    // index, evaluation and search errors) lands here.
    err << "lcr: " << e.what() << '\n';
    result = {kMalformed, status("error")};
    result.doc["message"] = e.what();
  }

  if (pretty) {
    render_pretty(result.doc, out, 0);
  } else {
    out << result.doc.dump() << '\n';
  }
  return result.code;
}

} // namespace lcr::cli
