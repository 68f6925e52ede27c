#pragma once

// Shared randomized generators and fixtures for the test suites.

#include <random>
#include <string>
#include <vector>

#include "zfstar/formula.hpp"
#include "zfstar/model.hpp"

namespace testgen {

using zfstar::Formula;
using zfstar::Structure;
using zfstar::Term;

inline const std::vector<std::string>& variable_pool() {
  static const std::vector<std::string> pool = {"a", "b", "g", "x",
                                                "y", "z", "w", "v"};
  return pool;
}

inline const std::vector<std::string>& constant_pool() {
  static const std::vector<std::string> pool = {"alpha", "beta", "s1"};
  return pool;
}

class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  Term random_term() {
    if (pick(4) == 0) return Term::constant(constant_pool()[pick(3)]);
    return Term::var(variable_pool()[pick(8)]);
  }

  Formula random_atom() {
    switch (pick(5)) {
      case 0: return Formula::equal(random_term(), random_term());
      case 1: return Formula::member(random_term(), random_term());
      case 2: return Formula::set_pred(random_term());
      case 3: return Formula::part(random_term(), random_term());
      default: return random_term_macro();
    }
  }

  Formula random_term_macro() {
    static const std::vector<std::pair<std::string, int>> macros = {
        {"T", 1},   {"Disj", 2}, {"Ind", 2}, {"Sum", 2},
        {"Cant", 1}, {"Card", 1}, {"Irr", 2}};
    auto [name, arity] = macros[pick(macros.size())];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term());
    return Formula::macro(name, std::move(args));
  }

  Formula random_formula(int max_depth) {
    if (max_depth <= 0) return random_atom();
    switch (pick(10)) {
      case 0: return random_atom();
      case 1: return Formula::negation(random_formula(max_depth - 1));
      case 2:
        return Formula::conjunction(random_formula(max_depth - 1),
                                    random_formula(max_depth - 1));
      case 3:
        return Formula::disjunction(random_formula(max_depth - 1),
                                    random_formula(max_depth - 1));
      case 4:
        return Formula::implication(random_formula(max_depth - 1),
                                    random_formula(max_depth - 1));
      case 5:
        return Formula::equivalence(random_formula(max_depth - 1),
                                    random_formula(max_depth - 1));
      case 6:
        return Formula::forall(variable_pool()[pick(8)],
                               random_formula(max_depth - 1));
      case 7:
        return Formula::exists(variable_pool()[pick(8)],
                               random_formula(max_depth - 1));
      case 8: {
        static const std::vector<std::string> named = {"CantF", "QP", "CP",
                                                       "SetOf"};
        return Formula::macro(named[pick(4)], variable_pool()[pick(8)],
                              random_formula(max_depth - 1), random_term());
      }
      default: return random_term_macro();
    }
  }

 private:
  int pick(std::size_t n) {
    return std::uniform_int_distribution<int>(0, static_cast<int>(n) - 1)(rng_);
  }
  std::mt19937 rng_;
};

class StructureGen {
 public:
  explicit StructureGen(unsigned seed) : rng_(seed) {}

  // A validate-passing structure with randomized element names, tags,
  // relation contents and pair order.
  Structure random_valid(int max_size = 5) {
    int n = 1 + pick(max_size);
    std::vector<std::string> names = {"alpha", "beta", "gamma", "s1",
                                      "s2",    "p1",   "p2",    "whole"};
    std::shuffle(names.begin(), names.end(), rng_);
    names.resize(static_cast<std::size_t>(n));

    std::vector<bool> set_tag(static_cast<std::size_t>(n));
    for (auto&& tag : set_tag) tag = pick(2) == 0;

    std::vector<std::string> sets;
    for (int i = 0; i < n; ++i)
      if (set_tag[static_cast<std::size_t>(i)]) sets.push_back(names[i]);
    std::shuffle(sets.begin(), sets.end(), rng_);

    std::vector<Structure::Pair> mem, part;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (set_tag[static_cast<std::size_t>(j)] && pick(3) == 0)
          mem.emplace_back(names[i], names[j]);
        if (!set_tag[static_cast<std::size_t>(i)] &&
            !set_tag[static_cast<std::size_t>(j)] && pick(3) == 0)
          part.emplace_back(names[i], names[j]);
      }
    }
    std::shuffle(mem.begin(), mem.end(), rng_);
    std::shuffle(part.begin(), part.end(), rng_);
    return Structure(std::move(names), std::move(sets), std::move(mem),
                     std::move(part));
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937 rng_;
};

// One whole with two photon parts collected by a set.
inline Structure photon_structure() {
  return Structure({"alpha", "beta1", "beta2", "s1"}, {"s1"},
                   {{"alpha", "s1"}, {"beta1", "s1"}, {"beta2", "s1"}},
                   {{"alpha", "alpha"},
                    {"beta1", "beta1"},
                    {"beta2", "beta2"},
                    {"beta1", "alpha"},
                    {"beta2", "alpha"}});
}

}  // namespace testgen
