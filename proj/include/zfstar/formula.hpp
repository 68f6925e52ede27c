#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zfstar/error.hpp"

namespace zfstar {

// A term is a variable or a quoted constant ('name' in the concrete syntax);
// constants are resolved against a structure's element names at evaluation
// time.
struct Term {
  enum class Kind { variable, constant };

  Kind kind = Kind::variable;
  std::string name;

  static Term var(std::string name) {
    return Term{Kind::variable, std::move(name)};
  }
  static Term constant(std::string name) {
    return Term{Kind::constant, std::move(name)};
  }
  bool is_var() const { return kind == Kind::variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

// Immutable formula AST. Core atoms are =, in (membership), Set(_) and <:
// (parthood); everything else is built from the classical connectives, the
// two quantifiers and macro applications. Subtrees are shared, copies are
// cheap.
class Formula {
 public:
  enum class Kind {
    equal,
    member,
    set_pred,
    part,
    logic_not,
    logic_and,
    logic_or,
    implies,
    iff,
    forall,
    exists,
    macro,
  };

  static Formula equal(Term a, Term b);
  static Formula member(Term element, Term container);
  static Formula set_pred(Term t);
  static Formula part(Term part, Term whole);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  // Term macro, e.g. Disj(a, b). Name and arity are checked against the
  // macro table.
  static Formula macro(std::string name, std::vector<Term> args);
  // Predicate macro, e.g. CantF[b: b <: g](a); `binder` is the designated
  // bound variable of `predicate`.
  static Formula macro(std::string name, std::string binder, Formula predicate,
                       Term arg);

  Kind kind() const { return node_->kind; }
  // Atom operands or macro term arguments.
  const std::vector<Term>& terms() const { return node_->terms; }
  // Quantifier variable or predicate-macro binder.
  const std::string& var() const { return node_->var; }
  const std::string& macro_name() const { return node_->name; }
  // First child: left operand, negation operand, quantifier body, or the
  // predicate argument of a predicate macro.
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  bool has_predicate() const {
    return node_->kind == Kind::macro && !node_->children.empty();
  }

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    std::vector<Term> terms;
    std::string var;
    std::string name;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct MacroSignature {
  int term_arity = 0;
  bool takes_predicate = false;
};

// The closed macro table: T, Disj, Ind, Sum, Cant, Card, Irr, CantF, QP, CP,
// SetOf.
const std::map<std::string, MacroSignature, std::less<>>& macro_signatures();

// Parses the concrete syntax (see the grammar in the README). Throws
// parse_error with position and expected-token information.
Formula parse(std::string_view text);

// Parses a predicate of the form "v: formula" (the bracket payload of
// predicate macros), as accepted by the CLI's --predicate flag.
std::pair<std::string, Formula> parse_predicate(std::string_view text);

// Canonical text form; parse(render(f)) reconstructs f exactly.
std::string render(const Formula& f);

std::set<std::string> free_vars(const Formula& f);

// Names of all constants occurring anywhere in f.
std::set<std::string> constants_of(const Formula& f);

// Replaces every macro node by its definition, renaming bound variables so
// that no argument gets captured. The result contains no macro nodes and is
// satisfaction-equivalent to f in every structure and environment.
Formula expand_macros(const Formula& f);

// Single-step expansion of a macro node (the result may contain further
// macros). Precondition: f.kind() == Kind::macro.
Formula expand_macro_once(const Formula& f);

// Closed sentences of the theory, by name:
//   extensionality, union, power_set, empty_set, amalgamation, infinity,
//   choice, foundation, reflexivity_part, transitivity_part,
//   existence_of_sums.
// Separation and replacement are schemas; see instantiate_schema.
const std::vector<std::string>& axiom_names();
Formula axiom_sentence(std::string_view name);

enum class Schema { separation, replacement };

// Builds a closed schema instance. For separation, f must have exactly the
// designated variable x free and x must be distinct from the schema's own
// bound variables y and z. For replacement, f must have exactly {x, y} free,
// distinct from u and v.
Formula instantiate_schema(Schema schema, const Formula& f,
                           const std::string& x, const std::string& y = "");

}  // namespace zfstar
