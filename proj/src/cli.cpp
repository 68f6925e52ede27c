#include "zfstar/cli.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zfstar/finder.hpp"
#include "zfstar/fock.hpp"
#include "zfstar/formula.hpp"
#include "zfstar/mereology.hpp"
#include "zfstar/model.hpp"
#include "zfstar/semantics.hpp"

namespace zfstar::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Formula read_formula(const std::string& inline_text, const std::string& path) {
  if (inline_text.empty() == path.empty())
    throw error("give a formula with exactly one of --formula, --formula-file");
  if (!inline_text.empty()) return parse(inline_text);
  std::ifstream in(path);
  if (!in) throw error("cannot open formula file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<std::string> parse_axiom_set(const std::string& text) {
  if (text == "none") return {};
  if (text == "pt") return pt_axioms();
  if (text == "pt+sets") {
    auto out = pt_axioms();
    out.insert(out.end(), {"extensionality", "empty_set", "foundation"});
    return out;
  }
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    axiom_sentence(name);  // validates
    out.push_back(name);
  }
  if (out.empty()) throw error("empty axiom set '" + text + "'");
  return out;
}

double parse_real(const std::string& text) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw error("cannot parse number '" + text + "'");
  }
  if (pos != text.size()) throw error("cannot parse number '" + text + "'");
  return v;
}

std::complex<double> parse_complex(const std::string& text) {
  if (text.empty()) throw error("empty complex literal");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  std::string body = text.substr(0, text.size() - 1);
  for (std::size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      std::string im = body.substr(k);
      if (im == "+") im = "1";
      if (im == "-") im = "-1";
      return {parse_real(body.substr(0, k)), parse_real(im)};
    }
  }
  if (body.empty() || body == "+") return {0.0, 1.0};
  if (body == "-") return {0.0, -1.0};
  return {0.0, parse_real(body)};
}

ordered_json term_json(const Term& t) {
  return {{"kind", t.is_var() ? "variable" : "constant"}, {"name", t.name}};
}

ordered_json ast_json(const Formula& f) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::equal:
    case Kind::member:
    case Kind::part:
    case Kind::set_pred: {
      const char* kind = f.kind() == Kind::equal      ? "equal"
                         : f.kind() == Kind::member   ? "member"
                         : f.kind() == Kind::part     ? "part"
                                                      : "set";
      ordered_json terms = ordered_json::array();
      for (const Term& t : f.terms()) terms.push_back(term_json(t));
      return {{"kind", kind}, {"terms", terms}};
    }
    case Kind::logic_not:
      return {{"kind", "not"}, {"operand", ast_json(f.left())}};
    case Kind::logic_and:
    case Kind::logic_or:
    case Kind::implies:
    case Kind::iff: {
      const char* kind = f.kind() == Kind::logic_and ? "and"
                         : f.kind() == Kind::logic_or ? "or"
                         : f.kind() == Kind::implies  ? "implies"
                                                      : "iff";
      return {{"kind", kind},
              {"left", ast_json(f.left())},
              {"right", ast_json(f.right())}};
    }
    case Kind::forall:
    case Kind::exists:
      return {{"kind", f.kind() == Kind::forall ? "forall" : "exists"},
              {"variable", f.var()},
              {"body", ast_json(f.left())}};
    case Kind::macro: {
      ordered_json j = {{"kind", "macro"}, {"name", f.macro_name()}};
      if (f.has_predicate()) {
        j["binder"] = f.var();
        j["predicate"] = ast_json(f.left());
      }
      ordered_json args = ordered_json::array();
      for (const Term& t : f.terms()) args.push_back(term_json(t));
      j["arguments"] = args;
      return j;
    }
  }
  throw error("unreachable formula kind");
}

ordered_json witness_json(const Environment& env) {
  ordered_json j = ordered_json::object();
  for (const auto& [var, elem] : env) j[var] = elem;
  return j;
}

std::string witness_text(const Environment& env) {
  std::string out;
  for (const auto& [var, elem] : env) {
    if (!out.empty()) out += ", ";
    out += var + "=" + elem;
  }
  return out;
}

ordered_json classification_json(const ClassificationReport& report) {
  ordered_json j;
  j["subject"] = report.subject;
  j["predicate"] = report.predicate ? ordered_json(*report.predicate)
                                    : ordered_json(nullptr);
  j["verdict"] = report.verdict_word();
  j["witnesses"] = report.witnesses;
  j["cardinal"] = report.cardinal ? ordered_json(*report.cardinal)
                                  : ordered_json(nullptr);
  return j;
}

void print_classification(const ClassificationReport& report,
                          std::ostream& out) {
  out << report.verdict_word();
  if (!report.predicate) {
    if (report.cardinal)
      out << ", cardinal " << *report.cardinal;
    else
      out << ", cardinal undefined";
  }
  if (!report.witnesses.empty())
    out << " (witness " << report.witnesses.front() << ")";
  out << "\n";
}

struct StateSpec {
  fock::FockState state;
};

// State descriptions for the bridge subcommand:
//   number:N[:nmax]      a number eigenstate
//   coherent:Z[:nmax]    a coherent state (Z may be complex, e.g. 1+0.5i)
//   superpose:N1,N2,...[:nmax]  equal-weight superposition of number states
fock::FockState parse_state_spec(const std::string& text, double eps) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) parts.push_back(piece);
  if (parts.size() < 2 || parts.size() > 3)
    throw error("state spec must look like kind:args[:nmax], got '" + text +
                "'");
  const std::string& kind = parts[0];
  int nmax = parts.size() == 3 ? static_cast<int>(parse_real(parts[2])) : -1;

  if (kind == "number") {
    int n = static_cast<int>(parse_real(parts[1]));
    return fock::number_state(n, nmax < 0 ? n : nmax);
  }
  if (kind == "coherent") {
    std::complex<double> z = parse_complex(parts[1]);
    if (nmax >= 0) return fock::coherent(z, nmax, eps);
    for (int guess = 16; guess <= 16384; guess *= 2) {
      try {
        return fock::coherent(z, guess, eps);
      } catch (const error&) {
      }
    }
    throw error("cannot reach the requested truncation quality for z = " +
                parts[1]);
  }
  if (kind == "superpose") {
    std::vector<int> ns;
    std::stringstream list(parts[1]);
    while (std::getline(list, piece, ','))
      ns.push_back(static_cast<int>(parse_real(piece)));
    if (ns.empty()) throw error("superpose needs at least one number state");
    int top = nmax < 0 ? *std::max_element(ns.begin(), ns.end()) : nmax;
    std::vector<fock::FockState> states;
    std::vector<std::complex<double>> coeffs;
    for (int n : ns) {
      states.push_back(fock::number_state(n, top));
      coeffs.emplace_back(1.0, 0.0);
    }
    return fock::superpose(states, coeffs);
  }
  throw error("unknown state kind '" + kind +
              "' (expected number, coherent or superpose)");
}

// --- subcommand drivers ----------------------------------------------------

struct FormulaArgs {
  std::string text, file;
};

void add_formula_options(CLI::App* cmd, FormulaArgs& args) {
  cmd->add_option("--formula", args.text, "formula text");
  cmd->add_option("--formula-file", args.file, "file containing the formula");
}

int run_parse(const FormulaArgs& fa, bool expand, bool ast, bool json,
              std::ostream& out) {
  Formula f = read_formula(fa.text, fa.file);
  if (json) {
    ordered_json j;
    j["command"] = "parse";
    j["formula"] = render(f);
    j["free_variables"] = free_vars(f);
    if (expand) j["expanded"] = render(expand_macros(f));
    if (ast) j["ast"] = ast_json(f);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << render(f) << "\n";
  if (expand) out << "expanded: " << render(expand_macros(f)) << "\n";
  if (ast) out << "ast: " << ast_json(f).dump() << "\n";
  return 0;
}

int run_eval(const std::string& model, const FormulaArgs& fa,
             const std::vector<std::string>& binds, bool json,
             std::ostream& out) {
  Structure s = Structure::load_file(model);
  Formula f = read_formula(fa.text, fa.file);
  Environment env;
  for (const auto& bind : binds) {
    auto eq = bind.find('=');
    if (eq == std::string::npos || eq == 0)
      throw error("--bind expects var=element, got '" + bind + "'");
    env[bind.substr(0, eq)] = bind.substr(eq + 1);
  }
  bool value = eval(s, f, env);
  if (json) {
    ordered_json j;
    j["command"] = "eval";
    j["formula"] = render(f);
    j["value"] = value;
    out << j.dump(2) << "\n";
  } else {
    out << (value ? "true" : "false") << "\n";
  }
  return value ? 0 : 1;
}

int run_check(const std::string& model, const std::string& axioms, bool json,
              std::ostream& out) {
  Structure s = Structure::load_file(model);
  AxiomReport report = check_axioms(s, parse_axiom_set(axioms));
  if (json) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
      ordered_json entry;
      entry["name"] = e.axiom;
      entry["verdict"] = to_string(e.verdict);
      entry["witness"] = e.verdict == AxiomVerdict::fail
                             ? witness_json(e.witness)
                             : ordered_json(nullptr);
      entries.push_back(entry);
    }
    ordered_json j;
    j["command"] = "check";
    j["axioms"] = entries;
    j["all_pass"] = report.all_pass();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& e : report.entries) {
      out << e.axiom << ": " << to_string(e.verdict);
      if (e.verdict == AxiomVerdict::fail && !e.witness.empty())
        out << "  [witness: " << witness_text(e.witness) << "]";
      out << "\n";
    }
  }
  return report.all_pass() ? 0 : 1;
}

int run_find(int size, const FormulaArgs& fa, const std::string& mode,
             const std::string& axioms, bool symmetry, bool serial, bool json,
             std::ostream& out, std::ostream& err) {
  if (size >= 4)
    err << "note: size " << size
        << " spans a large candidate space; this may take a while\n";
  auto axiom_list = parse_axiom_set(axioms);

  if (mode == "count") {
    std::uint64_t count =
        finder::count_models(size, axiom_list, symmetry, !serial);
    // With symmetry on, the raw count is reported alongside.
    std::optional<std::uint64_t> raw;
    if (symmetry)
      raw = finder::count_models(size, axiom_list, false, !serial);
    if (json) {
      ordered_json j;
      j["command"] = "find";
      j["mode"] = "count";
      j["size"] = size;
      j["count"] = count;
      if (raw) j["raw_count"] = *raw;
      out << j.dump(2) << "\n";
    } else if (raw) {
      out << "up-to-isomorphism: " << count << "\n";
      out << "raw: " << *raw << "\n";
    } else {
      out << count << "\n";
    }
    return 0;
  }

  finder::SearchSpec spec;
  spec.max_size = size;
  spec.axioms = axiom_list;
  spec.target = read_formula(fa.text, fa.file);
  spec.symmetry_reduction = symmetry;
  spec.parallel = !serial;
  bool counter = mode == "counter";
  if (!counter && mode != "model")
    throw error("--mode must be model, counter or count, got '" + mode + "'");
  auto result = counter ? finder::find_countermodel(spec)
                        : finder::find_model(spec);
  const char* noun = counter ? "countermodel" : "model";
  if (json) {
    ordered_json j;
    j["command"] = "find";
    j["mode"] = counter ? "counter" : "model";
    j["found"] = result.has_value();
    if (result) {
      j["size"] = result->size;
      j["candidate_index"] = result->candidate_index;
      j["structure"] = ordered_json::parse(result->structure.save());
    }
    out << j.dump(2) << "\n";
  } else if (result) {
    out << noun << " found at size " << result->size << " (candidate "
        << result->candidate_index << ")\n"
        << result->structure.save();
  } else {
    out << "no " << noun << " up to size " << size << "\n";
  }
  return result ? 0 : 1;
}

int run_classify(const std::string& model, const std::string& element,
                 const std::string& predicate, bool json, std::ostream& out) {
  Structure s = Structure::load_file(model);
  ClassificationReport report;
  if (predicate.empty()) {
    report = classify(s, element);
  } else {
    auto [binder, f] = parse_predicate(predicate);
    report = classify(s, element, binder, f);
  }
  if (json) {
    ordered_json j;
    j["command"] = "classify";
    ordered_json details = classification_json(report);
    for (auto& [key, value] : details.items()) j[key] = std::move(value);
    out << j.dump(2) << "\n";
  } else {
    print_classification(report, out);
  }
  return report.positive ? 0 : 1;
}

int run_coherent(const std::string& z_text, int nmax, double eps, double omega,
                 double tol, bool stats, const std::string& csv, bool json,
                 std::ostream& out) {
  std::complex<double> z = parse_complex(z_text);
  fock::FockState state = [&] {
    if (nmax >= 0) return fock::coherent(z, nmax, eps);
    for (int guess = 16; guess <= 16384; guess *= 2) {
      try {
        return fock::coherent(z, guess, eps);
      } catch (const error&) {
      }
    }
    throw error("cannot reach the requested truncation quality for z = " +
                z_text);
  }();

  auto verdict = fock::is_number_eigenstate(state, tol);
  ordered_json j;
  if (json) {
    j["command"] = "coherent";
    j["z"] = {{"re", z.real()}, {"im", z.imag()}};
    j["n_max"] = state.truncation();
    j["deficit"] = state.truncation_deficit();
  } else {
    out << "coherent z=" << num(z.real())
        << (z.imag() != 0 ? (z.imag() > 0 ? "+" : "") + num(z.imag()) + "i"
                          : "")
        << " n_max=" << state.truncation() << "\n";
    out << "truncation deficit: " << num(state.truncation_deficit()) << "\n";
  }
  if (stats) {
    double mean = fock::expected_number(state);
    double variance = fock::number_variance(state);
    double energy = fock::mode_energy(state, omega);
    if (json) {
      j["stats"] = {{"mean", mean},
                    {"variance", variance},
                    {"omega", omega},
                    {"energy", energy},
                    {"number_eigenstate", verdict.definite},
                    {"max_probability", verdict.probability}};
    } else {
      out << "mean: " << num(mean) << "\n";
      out << "variance: " << num(variance) << "\n";
      out << "energy (omega=" << num(omega) << "): " << num(energy) << "\n";
      out << "number eigenstate: " << (verdict.definite ? "yes" : "no")
          << " (max probability " << num(verdict.probability) << ")\n";
    }
  }
  if (!csv.empty()) {
    if (csv == "-") {
      fock::write_distribution_csv(state, out);
    } else {
      std::ofstream file(csv);
      if (!file) throw error("cannot open '" + csv + "' for writing");
      fock::write_distribution_csv(state, file);
      if (!json) out << "distribution written to " << csv << "\n";
    }
  }
  if (json) out << j.dump(2) << "\n";
  return 0;
}

int run_bridge(const std::string& spec_text, const std::string& out_path,
               double tol, double eps, bool json, std::ostream& out) {
  fock::FockState state = parse_state_spec(spec_text, eps);
  fock::BridgeResult bridge = fock::to_structure(state, tol);
  {
    std::ofstream file(out_path);
    if (!file) throw error("cannot open '" + out_path + "' for writing");
    file << bridge.structure.save();
  }
  if (json) {
    ordered_json j;
    j["command"] = "bridge";
    j["state"] = state.label();
    j["definite_number"] = bridge.definite_number;
    j["photons"] = bridge.photon_count;
    j["classification"] = classification_json(bridge.report);
    j["interpretation"] = bridge.interpretation;
    j["model_path"] = out_path;
    out << j.dump(2) << "\n";
  } else {
    out << "state: " << state.label() << "\n";
    out << "photons: " << bridge.photon_count
        << (bridge.definite_number ? " (definite)" : " (undefined number)")
        << "\n";
    out << "verdict: ";
    print_classification(bridge.report, out);
    out << "interpretation: " << bridge.interpretation << "\n";
    out << "model written to " << out_path << "\n";
  }
  return bridge.report.positive ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"workbench for a set theory with physical things"};
  app.name("zfstar");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output");

  auto* cmd_parse = app.add_subcommand("parse", "parse and render a formula");
  FormulaArgs parse_fa;
  bool parse_expand = false, parse_ast = false;
  add_formula_options(cmd_parse, parse_fa);
  cmd_parse->add_flag("--expand", parse_expand, "print the macro-free form");
  cmd_parse->add_flag("--ast", parse_ast, "print the syntax tree");
  cmd_parse->fallthrough();

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula in a model");
  FormulaArgs eval_fa;
  std::string eval_model;
  std::vector<std::string> eval_binds;
  cmd_eval->add_option("--model", eval_model, "model file")->required();
  add_formula_options(cmd_eval, eval_fa);
  cmd_eval->add_option("--bind", eval_binds, "variable binding var=element");
  cmd_eval->fallthrough();

  auto* cmd_check = app.add_subcommand("check", "check axioms in a model");
  std::string check_model, check_axioms_text = "pt";
  cmd_check->add_option("--model", check_model, "model file")->required();
  cmd_check->add_option("--axioms", check_axioms_text,
                        "pt, pt+sets, none, or a comma-separated name list");
  cmd_check->fallthrough();

  auto* cmd_find = app.add_subcommand("find", "search finite structures");
  FormulaArgs find_fa;
  int find_size = 3;
  std::string find_mode = "model", find_axioms = "pt";
  bool find_symmetry = false, find_serial = false;
  cmd_find->add_option("--size", find_size, "domain size bound (max 5)");
  add_formula_options(cmd_find, find_fa);
  cmd_find->add_option("--mode", find_mode, "model, counter or count");
  cmd_find->add_option("--axioms", find_axioms, "axiom set to impose");
  cmd_find->add_flag("--symmetry", find_symmetry,
                     "deduplicate isomorphic structures");
  cmd_find->add_flag("--serial", find_serial, "disable the parallel kernel");
  cmd_find->fallthrough();

  auto* cmd_classify =
      app.add_subcommand("classify", "cantorian/quantal classification");
  std::string classify_model, classify_element, classify_predicate;
  cmd_classify->add_option("--model", classify_model, "model file")->required();
  cmd_classify->add_option("--element", classify_element, "subject PT")
      ->required();
  cmd_classify->add_option("--predicate", classify_predicate,
                           "predicate \"var: formula\"");
  cmd_classify->fallthrough();

  auto* cmd_coherent =
      app.add_subcommand("coherent", "coherent-state statistics");
  std::string coherent_z, coherent_csv;
  int coherent_nmax = -1;
  double coherent_eps = fock::kNormTolerance, coherent_omega = 1.0,
         coherent_tol = 1e-9;
  bool coherent_stats = false;
  cmd_coherent->add_option("--z", coherent_z, "amplitude, e.g. 2 or 1+0.5i")
      ->required();
  cmd_coherent->add_option("--nmax", coherent_nmax,
                           "truncation (default: automatic)");
  cmd_coherent->add_option("--eps", coherent_eps, "truncation tolerance");
  cmd_coherent->add_option("--omega", coherent_omega, "mode frequency");
  cmd_coherent->add_option("--tol", coherent_tol, "eigenstate tolerance");
  cmd_coherent->add_flag("--stats", coherent_stats,
                         "print mean, variance and energy");
  cmd_coherent->add_option("--csv", coherent_csv,
                           "write the number distribution (path or -)");
  cmd_coherent->fallthrough();

  auto* cmd_bridge =
      app.add_subcommand("bridge", "render a state as a model file");
  std::string bridge_spec, bridge_out;
  double bridge_tol = 1e-9, bridge_eps = fock::kNormTolerance;
  cmd_bridge
      ->add_option("--state-spec", bridge_spec,
                   "number:N, coherent:Z or superpose:N1,N2,... "
                   "(optionally :nmax)")
      ->required();
  cmd_bridge->add_option("--out", bridge_out, "model file to write")
      ->required();
  cmd_bridge->add_option("--tol", bridge_tol, "eigenstate tolerance");
  cmd_bridge->add_option("--eps", bridge_eps, "coherent truncation tolerance");
  cmd_bridge->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_parse->parsed())
      return run_parse(parse_fa, parse_expand, parse_ast, json, out);
    if (cmd_eval->parsed())
      return run_eval(eval_model, eval_fa, eval_binds, json, out);
    if (cmd_check->parsed())
      return run_check(check_model, check_axioms_text, json, out);
    if (cmd_find->parsed())
      return run_find(find_size, find_fa, find_mode, find_axioms,
                      find_symmetry, find_serial, json, out, err);
    if (cmd_classify->parsed())
      return run_classify(classify_model, classify_element, classify_predicate,
                          json, out);
    if (cmd_coherent->parsed())
      return run_coherent(coherent_z, coherent_nmax, coherent_eps,
                          coherent_omega, coherent_tol, coherent_stats,
                          coherent_csv, json, out);
    if (cmd_bridge->parsed())
      return run_bridge(bridge_spec, bridge_out, bridge_tol, bridge_eps, json,
                        out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace zfstar::cli
