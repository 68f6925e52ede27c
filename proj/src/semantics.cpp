#include "zfstar/semantics.hpp"

namespace zfstar {

bool eval(const Structure& s, const Formula& f, const Environment& env) {
  for (const auto& v : free_vars(f))
    if (!env.count(v)) throw eval_error("unbound free variable '" + v + "'");
  for (const auto& c : constants_of(f))
    if (!s.index_of(c)) throw eval_error("undeclared constant '" + c + "'");

  detail::Evaluator<Structure> ev(s);
  for (const auto& [name, value] : env) {
    auto idx = s.index_of(value);
    if (!idx)
      throw eval_error("environment binds '" + name +
                       "' to undeclared element '" + value + "'");
    ev.bind(name, *idx);
  }
  return ev.run(f);
}

std::vector<std::string> satisfying_assignments(const Structure& s,
                                                const Formula& f,
                                                const std::string& variable) {
  auto vars = free_vars(f);
  if (vars != std::set<std::string>{variable}) {
    std::string have;
    for (const auto& v : vars) have += (have.empty() ? "" : ", ") + v;
    throw eval_error("formula must have exactly '" + variable +
                     "' free, found {" + have + "}");
  }
  std::vector<std::string> out;
  Environment env;
  for (const auto& name : s.elements()) {
    env[variable] = name;
    if (eval(s, f, env)) out.push_back(name);
  }
  return out;
}

}  // namespace zfstar
