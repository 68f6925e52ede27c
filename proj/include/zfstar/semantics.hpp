#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "zfstar/error.hpp"
#include "zfstar/formula.hpp"
#include "zfstar/model.hpp"

namespace zfstar {

// Partial map from variable names to element names of the target structure.
using Environment = std::map<std::string, std::string>;

// Classical satisfaction of f in s under env. Quantifiers range over the
// whole domain; sort-mismatched atoms (a part-of atom touching a set, a
// membership atom with a PT container) are simply false. Macros evaluate
// through their expansions.
//
// Requires free_vars(f) to be covered by env, env values and constants to
// name declared elements, and s to be valid.
bool eval(const Structure& s, const Formula& f, const Environment& env = {});

// All elements d with eval(s, f, {v -> d}), in declaration order.
// free_vars(f) must be exactly {v}.
std::vector<std::string> satisfying_assignments(const Structure& s,
                                                const Formula& f,
                                                const std::string& variable);

namespace detail {

// Shared evaluation core. Dom provides:
//   size(), is_set(i), membership_bit(i,j), parthood_bit(i,j),
//   index_of(name) -> std::optional<std::size_t>
// It is instantiated for Structure and for the finder's packed candidates,
// so both run the same satisfaction semantics.
template <class Dom>
class Evaluator {
 public:
  explicit Evaluator(const Dom& dom) : dom_(dom) {}

  void bind(const std::string& name, std::size_t value) {
    push(name, value);
  }

  bool run(const Formula& f) {
    using Kind = Formula::Kind;
    switch (f.kind()) {
      case Kind::equal:
        return resolve(f.terms()[0]) == resolve(f.terms()[1]);
      case Kind::member:
        return dom_.membership_bit(resolve(f.terms()[0]),
                                   resolve(f.terms()[1]));
      case Kind::set_pred:
        return dom_.is_set(resolve(f.terms()[0]));
      case Kind::part:
        return dom_.parthood_bit(resolve(f.terms()[0]), resolve(f.terms()[1]));
      case Kind::logic_not:
        return !run(f.left());
      case Kind::logic_and:
        return run(f.left()) && run(f.right());
      case Kind::logic_or:
        return run(f.left()) || run(f.right());
      case Kind::implies:
        return !run(f.left()) || run(f.right());
      case Kind::iff:
        return run(f.left()) == run(f.right());
      case Kind::forall: {
        for (std::size_t d = 0; d < dom_.size(); ++d) {
          push(f.var(), d);
          bool ok = run(f.left());
          pop();
          if (!ok) return false;
        }
        return true;
      }
      case Kind::exists: {
        for (std::size_t d = 0; d < dom_.size(); ++d) {
          push(f.var(), d);
          bool ok = run(f.left());
          pop();
          if (ok) return true;
        }
        return false;
      }
      case Kind::macro: {
        Formula expanded = expand_macro_once(f);
        return run(expanded);
      }
    }
    throw eval_error("unreachable formula kind");
  }

 private:
  struct Binding {
    const std::string* name;
    std::size_t value;
  };

  void push(const std::string& name, std::size_t value) {
    if (depth_ == scope_.size())
      throw eval_error("quantifier nesting too deep");
    scope_[depth_++] = {&name, value};
  }
  void pop() { --depth_; }

  std::size_t resolve(const Term& t) {
    if (t.is_var()) {
      for (std::size_t i = depth_; i-- > 0;)
        if (*scope_[i].name == t.name) return scope_[i].value;
      throw eval_error("unbound variable '" + t.name + "'");
    }
    auto idx = dom_.index_of(t.name);
    if (!idx) throw eval_error("undeclared constant '" + t.name + "'");
    return *idx;
  }

  const Dom& dom_;
  std::array<Binding, 64> scope_;
  std::size_t depth_ = 0;
};

}  // namespace detail

}  // namespace zfstar
