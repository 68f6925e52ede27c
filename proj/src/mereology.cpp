#include "zfstar/mereology.hpp"

#include <algorithm>
#include <map>

namespace zfstar {

std::string to_string(AxiomVerdict v) {
  switch (v) {
    case AxiomVerdict::pass: return "pass";
    case AxiomVerdict::fail: return "fail";
    case AxiomVerdict::not_finitely_checkable: return "not-finitely-checkable";
  }
  return "?";
}

const std::vector<std::string>& pt_axioms() {
  static const std::vector<std::string> names = {
      "reflexivity_part", "transitivity_part", "existence_of_sums"};
  return names;
}

const std::vector<std::string>& finitely_checkable_axioms() {
  static const std::vector<std::string> names = {
      "reflexivity_part", "transitivity_part", "existence_of_sums",
      "extensionality",   "empty_set",         "foundation"};
  return names;
}

bool is_finitely_checkable(std::string_view axiom) {
  const auto& names = finitely_checkable_axioms();
  return std::find(names.begin(), names.end(), axiom) != names.end();
}

const Formula& expanded_axiom(std::string_view name) {
  static const std::map<std::string, Formula, std::less<>> cache = [] {
    std::map<std::string, Formula, std::less<>> out;
    for (const auto& n : axiom_names())
      out.emplace(n, expand_macros(axiom_sentence(n)));
    return out;
  }();
  auto it = cache.find(name);
  if (it == cache.end())
    throw error("unknown axiom name '" + std::string(name) + "'");
  return it->second;
}

namespace {

// Walks a falsified sentence towards the subformula a concrete assignment
// refutes: peels universal quantifiers (binding a failing element),
// implications with true antecedents, and false conjuncts.
void descend_falsifying(const Structure& s, const Formula& f, Environment& env,
                        Formula& residual) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::forall:
      for (const auto& name : s.elements()) {
        env[f.var()] = name;
        if (!eval(s, f.left(), env)) {
          descend_falsifying(s, f.left(), env, residual);
          return;
        }
      }
      env.erase(f.var());
      residual = f;  // should be unreachable for a falsified sentence
      return;
    case Kind::implies:
      if (eval(s, f.left(), env)) {
        descend_falsifying(s, f.right(), env, residual);
        return;
      }
      residual = f;
      return;
    case Kind::logic_and:
      if (!eval(s, f.left(), env)) {
        descend_falsifying(s, f.left(), env, residual);
      } else {
        descend_falsifying(s, f.right(), env, residual);
      }
      return;
    default:
      residual = f;
      return;
  }
}

std::size_t require_pt(const Structure& s, const std::string& name,
                       const char* role) {
  auto idx = s.index_of(name);
  if (!idx) throw error("undeclared element '" + name + "'");
  if (s.is_set(*idx))
    throw error("'" + name + "' is a set; " + role + " must be a PT");
  return *idx;
}

// Bitmask over element indices; structures are desk-sized, but keep a
// vector<bool> so nothing caps the domain.
std::vector<bool> parts_mask(const Structure& s, std::size_t alpha) {
  std::vector<bool> mask(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.parthood_bit(i, alpha)) mask[i] = true;
  return mask;
}

std::vector<bool> members_mask(const Structure& s, std::size_t container) {
  std::vector<bool> mask(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.membership_bit(i, container)) mask[i] = true;
  return mask;
}

std::vector<std::string> collecting_sets(const Structure& s,
                                         const std::vector<bool>& extension) {
  std::vector<std::string> out;
  for (std::size_t y = 0; y < s.size(); ++y)
    if (s.is_set(y) && members_mask(s, y) == extension)
      out.push_back(s.name_of(y));
  return out;
}

}  // namespace

AxiomReport check_axioms(const Structure& s,
                         const std::vector<std::string>& axioms) {
  AxiomReport report;
  for (const auto& name : axioms) {
    AxiomOutcome outcome;
    outcome.axiom = name;
    const Formula& sentence = expanded_axiom(name);  // validates the name
    if (!is_finitely_checkable(name)) {
      outcome.verdict = AxiomVerdict::not_finitely_checkable;
    } else if (eval(s, sentence)) {
      outcome.verdict = AxiomVerdict::pass;
    } else {
      outcome.verdict = AxiomVerdict::fail;
      Formula residual = sentence;
      descend_falsifying(s, sentence, outcome.witness, residual);
      outcome.falsified = residual;
    }
    report.entries.push_back(std::move(outcome));
  }
  return report;
}

bool axioms_hold(const Structure& s, const std::vector<std::string>& axioms) {
  for (const auto& name : axioms) {
    if (!is_finitely_checkable(name))
      throw error("axiom '" + name + "' is not finitely checkable");
    if (!eval(s, expanded_axiom(name))) return false;
  }
  return true;
}

CantorianResult is_cantorian(const Structure& s, const std::string& alpha) {
  std::size_t a = require_pt(s, alpha, "the subject");
  CantorianResult result;
  result.witnesses = collecting_sets(s, parts_mask(s, a));
  result.positive = !result.witnesses.empty();
  return result;
}

std::optional<std::size_t> cardinal(const Structure& s,
                                    const std::string& alpha) {
  auto result = is_cantorian(s, alpha);
  if (!result.positive) return std::nullopt;
  return s.members(result.witnesses.front()).size();
}

namespace {

bool eval_pt_pair_macro(const Structure& s, const char* macro_name,
                        const std::string& alpha, const std::string& beta) {
  require_pt(s, alpha, "the argument");
  require_pt(s, beta, "the argument");
  static const std::map<std::string, Formula> cache = [] {
    std::map<std::string, Formula> out;
    out.emplace("Disj", parse("Disj(a, b)"));
    out.emplace("Ind", parse("Ind(a, b)"));
    return out;
  }();
  return eval(s, cache.at(macro_name), {{"a", alpha}, {"b", beta}});
}

}  // namespace

bool disjoint(const Structure& s, const std::string& alpha,
              const std::string& beta) {
  return eval_pt_pair_macro(s, "Disj", alpha, beta);
}

bool indiscernible(const Structure& s, const std::string& alpha,
                   const std::string& beta) {
  return eval_pt_pair_macro(s, "Ind", alpha, beta);
}

std::vector<std::vector<std::string>> indiscernibility_classes(
    const Structure& s) {
  for (const char* name : {"reflexivity_part", "transitivity_part"})
    if (!eval(s, expanded_axiom(name)))
      throw error(std::string("indiscernibility requires axiom '") + name +
                  "', which fails in this structure");
  std::vector<std::vector<std::string>> classes;
  std::vector<bool> assigned(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_set(i) || assigned[i]) continue;
    std::vector<std::string> cls;
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s.is_set(j) || assigned[j]) continue;
      if (s.parthood_bit(i, j) && s.parthood_bit(j, i)) {
        assigned[j] = true;
        cls.push_back(s.name_of(j));
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::string> sums(const Structure& s, const std::string& x) {
  auto idx = s.index_of(x);
  if (!idx) throw error("undeclared element '" + x + "'");
  if (!s.is_set(*idx)) throw error("'" + x + "' is not a set");
  static const Formula sum_formula = parse("Sum(x, a)");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_set(i)) continue;
    if (eval(s, sum_formula, {{"x", x}, {"a", s.name_of(i)}}))
      out.push_back(s.name_of(i));
  }
  return out;
}

std::vector<std::string> irreducible_parts(const Structure& s,
                                           const std::string& beta) {
  require_pt(s, beta, "the whole");
  static const Formula irr_formula = parse("Irr(a, b)");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_set(i)) continue;
    if (eval(s, irr_formula, {{"a", s.name_of(i)}, {"b", beta}}))
      out.push_back(s.name_of(i));
  }
  return out;
}

ClassificationReport classify(const Structure& s, const std::string& alpha) {
  ClassificationReport report;
  report.subject = alpha;
  auto result = is_cantorian(s, alpha);
  report.positive = result.positive;
  report.witnesses = std::move(result.witnesses);
  if (report.positive)
    report.cardinal = s.members(report.witnesses.front()).size();
  return report;
}

ClassificationReport classify(const Structure& s, const std::string& alpha,
                              const std::string& binder,
                              const Formula& predicate) {
  std::size_t a = require_pt(s, alpha, "the subject");
  auto vars = free_vars(predicate);
  vars.erase(binder);
  if (!vars.empty())
    throw error("predicate may only use its designated variable '" + binder +
                "' free; '" + *vars.begin() + "' also occurs");

  ClassificationReport report;
  report.subject = alpha;
  report.predicate = binder + ": " + render(predicate);

  // The parts of alpha satisfying the predicate.
  std::vector<bool> extension(s.size(), false);
  Environment env;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.parthood_bit(i, a)) continue;
    env[binder] = s.name_of(i);
    if (eval(s, predicate, env)) extension[i] = true;
  }
  report.witnesses = collecting_sets(s, extension);
  report.positive = !report.witnesses.empty();
  return report;
}

}  // namespace zfstar
