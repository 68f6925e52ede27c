#include "zfstar/formula.hpp"

#include <algorithm>
#include <cstddef>

namespace zfstar {

namespace {

using Kind = Formula::Kind;

bool is_binary(Kind k) {
  return k == Kind::logic_and || k == Kind::logic_or || k == Kind::implies ||
         k == Kind::iff;
}

bool is_quantifier(Kind k) { return k == Kind::forall || k == Kind::exists; }

}  // namespace

Formula Formula::make(Node node) {
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::equal(Term a, Term b) {
  return make({Kind::equal, {std::move(a), std::move(b)}, {}, {}, {}});
}

Formula Formula::member(Term element, Term container) {
  return make(
      {Kind::member, {std::move(element), std::move(container)}, {}, {}, {}});
}

Formula Formula::set_pred(Term t) {
  return make({Kind::set_pred, {std::move(t)}, {}, {}, {}});
}

Formula Formula::part(Term part, Term whole) {
  return make({Kind::part, {std::move(part), std::move(whole)}, {}, {}, {}});
}

Formula Formula::negation(Formula f) {
  return make({Kind::logic_not, {}, {}, {}, {std::move(f)}});
}

Formula Formula::conjunction(Formula a, Formula b) {
  return make({Kind::logic_and, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::disjunction(Formula a, Formula b) {
  return make({Kind::logic_or, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::implication(Formula a, Formula b) {
  return make({Kind::implies, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::equivalence(Formula a, Formula b) {
  return make({Kind::iff, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula Formula::forall(std::string var, Formula body) {
  return make({Kind::forall, {}, std::move(var), {}, {std::move(body)}});
}

Formula Formula::exists(std::string var, Formula body) {
  return make({Kind::exists, {}, std::move(var), {}, {std::move(body)}});
}

Formula Formula::macro(std::string name, std::vector<Term> args) {
  auto it = macro_signatures().find(name);
  if (it == macro_signatures().end())
    throw error("unknown macro name '" + name + "'");
  if (it->second.takes_predicate)
    throw error("macro '" + name +
                "' requires a [var: formula] predicate argument");
  if (static_cast<int>(args.size()) != it->second.term_arity)
    throw error("macro '" + name + "' takes " +
                std::to_string(it->second.term_arity) + " term argument(s), got " +
                std::to_string(args.size()));
  return make({Kind::macro, std::move(args), {}, std::move(name), {}});
}

Formula Formula::macro(std::string name, std::string binder, Formula predicate,
                       Term arg) {
  auto it = macro_signatures().find(name);
  if (it == macro_signatures().end())
    throw error("unknown macro name '" + name + "'");
  if (!it->second.takes_predicate)
    throw error("macro '" + name + "' does not take a predicate argument");
  return make({Kind::macro,
               {std::move(arg)},
               std::move(binder),
               std::move(name),
               {std::move(predicate)}});
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.terms != b.terms || a.var != b.var ||
      a.name != b.name || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(a.children[i] == b.children[i])) return false;
  return true;
}

const std::map<std::string, MacroSignature, std::less<>>& macro_signatures() {
  static const std::map<std::string, MacroSignature, std::less<>> table = {
      {"T", {1, false}},     {"Disj", {2, false}},  {"Ind", {2, false}},
      {"Sum", {2, false}},   {"Cant", {1, false}},  {"Card", {1, false}},
      {"Irr", {2, false}},   {"CantF", {1, true}},  {"QP", {1, true}},
      {"CP", {1, true}},     {"SetOf", {1, true}},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::equal:
    case Kind::member:
    case Kind::set_pred:
    case Kind::part:
      for (const Term& t : f.terms())
        if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
      return;
    case Kind::logic_not:
      free_vars_into(f.left(), bound, out);
      return;
    case Kind::logic_and:
    case Kind::logic_or:
    case Kind::implies:
    case Kind::iff:
      free_vars_into(f.left(), bound, out);
      free_vars_into(f.right(), bound, out);
      return;
    case Kind::forall:
    case Kind::exists: {
      bool inserted = bound.insert(f.var()).second;
      free_vars_into(f.left(), bound, out);
      if (inserted) bound.erase(f.var());
      return;
    }
    case Kind::macro: {
      for (const Term& t : f.terms())
        if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
      if (f.has_predicate()) {
        bool inserted = bound.insert(f.var()).second;
        free_vars_into(f.left(), bound, out);
        if (inserted) bound.erase(f.var());
      }
      return;
    }
  }
}

// Every variable name occurring in f, free or bound. Used to pick fresh
// names during macro expansion.
void all_var_names(const Formula& f, std::set<std::string>& out) {
  for (const Term& t : f.terms())
    if (t.is_var()) out.insert(t.name);
  if (is_quantifier(f.kind()) || (f.kind() == Kind::macro && f.has_predicate()))
    out.insert(f.var());
  if (f.kind() == Kind::logic_not || is_quantifier(f.kind())) {
    all_var_names(f.left(), out);
  } else if (is_binary(f.kind())) {
    all_var_names(f.left(), out);
    all_var_names(f.right(), out);
  } else if (f.kind() == Kind::macro && f.has_predicate()) {
    all_var_names(f.left(), out);
  }
}

std::string fresh_name(std::set<std::string>& used, const std::string& base) {
  if (used.insert(base).second) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (used.insert(candidate).second) return candidate;
  }
}

// Renames free occurrences of variable `from` to `to`. `to` must not occur
// in f at all, so no capture is possible.
Formula rename_free(const Formula& f, const std::string& from,
                    const std::string& to) {
  auto rename_term = [&](const Term& t) {
    if (t.is_var() && t.name == from) return Term::var(to);
    return t;
  };
  switch (f.kind()) {
    case Kind::equal:
      return Formula::equal(rename_term(f.terms()[0]), rename_term(f.terms()[1]));
    case Kind::member:
      return Formula::member(rename_term(f.terms()[0]),
                             rename_term(f.terms()[1]));
    case Kind::set_pred:
      return Formula::set_pred(rename_term(f.terms()[0]));
    case Kind::part:
      return Formula::part(rename_term(f.terms()[0]), rename_term(f.terms()[1]));
    case Kind::logic_not:
      return Formula::negation(rename_free(f.left(), from, to));
    case Kind::logic_and:
      return Formula::conjunction(rename_free(f.left(), from, to),
                                  rename_free(f.right(), from, to));
    case Kind::logic_or:
      return Formula::disjunction(rename_free(f.left(), from, to),
                                  rename_free(f.right(), from, to));
    case Kind::implies:
      return Formula::implication(rename_free(f.left(), from, to),
                                  rename_free(f.right(), from, to));
    case Kind::iff:
      return Formula::equivalence(rename_free(f.left(), from, to),
                                  rename_free(f.right(), from, to));
    case Kind::forall:
    case Kind::exists: {
      if (f.var() == from) return f;  // occurrences below are bound
      Formula body = rename_free(f.left(), from, to);
      return f.kind() == Kind::forall ? Formula::forall(f.var(), std::move(body))
                                      : Formula::exists(f.var(), std::move(body));
    }
    case Kind::macro: {
      std::vector<Term> args;
      args.reserve(f.terms().size());
      for (const Term& t : f.terms()) args.push_back(rename_term(t));
      if (!f.has_predicate()) return Formula::macro(f.macro_name(), std::move(args));
      Formula pred = f.var() == from ? f.left() : rename_free(f.left(), from, to);
      return Formula::macro(f.macro_name(), f.var(), std::move(pred),
                            std::move(args[0]));
    }
  }
  throw error("unreachable formula kind");
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  for (const Term& t : f.terms())
    if (!t.is_var()) out.insert(t.name);
  if (f.kind() == Kind::logic_not || is_quantifier(f.kind()) ||
      (f.kind() == Kind::macro && f.has_predicate())) {
    auto sub = constants_of(f.left());
    out.insert(sub.begin(), sub.end());
  } else if (is_binary(f.kind())) {
    for (const Formula* c : {&f.left(), &f.right()}) {
      auto sub = constants_of(*c);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Macro expansion

Formula expand_macro_once(const Formula& f) {
  if (f.kind() != Kind::macro)
    throw error("expand_macro_once applied to a non-macro formula");
  const std::string& name = f.macro_name();
  const std::vector<Term>& args = f.terms();

  // Fresh bound names must avoid everything the macro application mentions.
  std::set<std::string> used;
  for (const Term& t : args)
    if (t.is_var()) used.insert(t.name);
  if (f.has_predicate()) {
    used.insert(f.var());
    all_var_names(f.left(), used);
  }

  auto T = [](const Term& t) { return Formula::macro("T", {t}); };

  if (name == "T") return Formula::negation(Formula::set_pred(args[0]));

  if (name == "Disj") {
    Term g = Term::var(fresh_name(used, "g"));
    return Formula::negation(Formula::exists(
        g.name,
        Formula::conjunction(
            T(g), Formula::conjunction(Formula::part(g, args[0]),
                                       Formula::part(g, args[1])))));
  }

  if (name == "Ind")
    return Formula::conjunction(Formula::part(args[0], args[1]),
                                Formula::part(args[1], args[0]));

  if (name == "Sum") {
    const Term& x = args[0];
    const Term& a = args[1];
    Term y = Term::var(fresh_name(used, "y"));
    Term g = Term::var(fresh_name(used, "g"));
    Term b = Term::var(fresh_name(used, "b"));
    Formula members_are_pts =
        Formula::forall(y.name, Formula::implication(Formula::member(y, x), T(y)));
    Formula all_members_disjoint = Formula::forall(
        b.name,
        Formula::implication(
            T(b), Formula::implication(Formula::member(b, x),
                                       Formula::macro("Disj", {b, g}))));
    return Formula::implication(
        Formula::conjunction(Formula::set_pred(x), std::move(members_are_pts)),
        Formula::forall(
            g.name,
            Formula::implication(
                T(g), Formula::equivalence(Formula::macro("Disj", {g, a}),
                                           std::move(all_members_disjoint)))));
  }

  if (name == "Cant" || name == "Card") {
    Term y = Term::var(fresh_name(used, "y"));
    Term b = Term::var(fresh_name(used, "b"));
    return Formula::exists(
        y.name, Formula::forall(b.name, Formula::equivalence(
                                            Formula::member(b, y),
                                            Formula::part(b, args[0]))));
  }

  if (name == "Irr") {
    Term g = Term::var(fresh_name(used, "g"));
    return Formula::conjunction(
        Formula::part(args[0], args[1]),
        Formula::forall(
            g.name,
            Formula::implication(
                T(g), Formula::implication(Formula::part(g, args[0]),
                                           Formula::macro("Ind", {g, args[0]})))));
  }

  if (name == "SetOf" || name == "CantF" || name == "QP" || name == "CP") {
    if (name == "QP")
      return Formula::negation(
          Formula::macro("CantF", f.var(), f.left(), args[0]));
    if (name == "CP") return Formula::macro("CantF", f.var(), f.left(), args[0]);

    // Rename the binder when the term argument happens to carry the same
    // variable name, so the argument occurrence stays free.
    std::string binder = f.var();
    Formula predicate = f.left();
    if (args[0].is_var() && args[0].name == binder) {
      std::string renamed = fresh_name(used, binder);
      predicate = rename_free(predicate, binder, renamed);
      binder = renamed;
    }
    Term v = Term::var(binder);

    if (name == "SetOf")
      return Formula::forall(
          binder, Formula::equivalence(Formula::member(v, args[0]),
                                       std::move(predicate)));

    Term y = Term::var(fresh_name(used, "y"));
    return Formula::exists(
        y.name,
        Formula::forall(
            binder, Formula::equivalence(
                        Formula::member(v, y),
                        Formula::conjunction(Formula::part(v, args[0]),
                                             std::move(predicate)))));
  }

  throw error("unknown macro name '" + name + "'");
}

Formula expand_macros(const Formula& f) {
  switch (f.kind()) {
    case Kind::equal:
    case Kind::member:
    case Kind::set_pred:
    case Kind::part:
      return f;
    case Kind::logic_not:
      return Formula::negation(expand_macros(f.left()));
    case Kind::logic_and:
      return Formula::conjunction(expand_macros(f.left()),
                                  expand_macros(f.right()));
    case Kind::logic_or:
      return Formula::disjunction(expand_macros(f.left()),
                                  expand_macros(f.right()));
    case Kind::implies:
      return Formula::implication(expand_macros(f.left()),
                                  expand_macros(f.right()));
    case Kind::iff:
      return Formula::equivalence(expand_macros(f.left()),
                                  expand_macros(f.right()));
    case Kind::forall:
      return Formula::forall(f.var(), expand_macros(f.left()));
    case Kind::exists:
      return Formula::exists(f.var(), expand_macros(f.left()));
    case Kind::macro:
      return expand_macros(expand_macro_once(f));
  }
  throw error("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  ident,
  constant,
  kw_all,
  kw_ex,
  kw_in,
  kw_set,
  kw_pt,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  dot,
  colon,
  tilde,
  amp,
  pipe,
  arrow,
  iff,
  equals,
  part_of,
  end,
};

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::constant: return "constant";
    case Tok::kw_all: return "'all'";
    case Tok::kw_ex: return "'ex'";
    case Tok::kw_in: return "'in'";
    case Tok::kw_set: return "'Set'";
    case Tok::kw_pt: return "'PT'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::colon: return "':'";
    case Tok::tilde: return "'~'";
    case Tok::amp: return "'&'";
    case Tok::pipe: return "'|'";
    case Tok::arrow: return "'->'";
    case Tok::iff: return "'<->'";
    case Tok::equals: return "'='";
    case Tok::part_of: return "'<:'";
    case Tok::end: return "end of input";
  }
  return "?";
}

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok t, std::string s) {
    out.push_back({t, std::move(s), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok t = Tok::ident;
      if (word == "all") t = Tok::kw_all;
      else if (word == "ex") t = Tok::kw_ex;
      else if (word == "in") t = Tok::kw_in;
      else if (word == "Set") t = Tok::kw_set;
      else if (word == "PT") t = Tok::kw_pt;
      push(t, std::move(word));
      bump(j - i);
      continue;
    }
    if (c == '\'') {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      if (j == i + 1 || j >= text.size() || text[j] != '\'')
        throw parse_error("malformed constant literal", line, col);
      push(Tok::constant, std::string(text.substr(i + 1, j - i - 1)));
      bump(j - i + 1);
      continue;
    }
    switch (c) {
      case '(': push(Tok::lparen, "("); bump(1); continue;
      case ')': push(Tok::rparen, ")"); bump(1); continue;
      case '[': push(Tok::lbracket, "["); bump(1); continue;
      case ']': push(Tok::rbracket, "]"); bump(1); continue;
      case ',': push(Tok::comma, ","); bump(1); continue;
      case '.': push(Tok::dot, "."); bump(1); continue;
      case ':': push(Tok::colon, ":"); bump(1); continue;
      case '~': push(Tok::tilde, "~"); bump(1); continue;
      case '&': push(Tok::amp, "&"); bump(1); continue;
      case '|': push(Tok::pipe, "|"); bump(1); continue;
      case '=': push(Tok::equals, "="); bump(1); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::arrow, "->");
          bump(2);
          continue;
        }
        throw parse_error("stray '-'", line, col, {"'->'"});
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          push(Tok::iff, "<->");
          bump(3);
          continue;
        }
        if (i + 1 < text.size() && text[i + 1] == ':') {
          push(Tok::part_of, "<:");
          bump(2);
          continue;
        }
        throw parse_error("stray '<'", line, col, {"'<->'", "'<:'"});
      default:
        throw parse_error(std::string("unexpected character '") + c + "'",
                          line, col);
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser over the grammar:
//   formula := iff ;
//   iff     := impl ( "<->" impl )* ;
//   impl    := or ( "->" impl )? ;
//   or      := and ( "|" and )* ;
//   and     := unary ( "&" unary )* ;
//   unary   := "~" unary | quant | atom | "(" formula ")" ;
//   quant   := ("all"|"ex") IDENT ( ":" ("PT"|"Set") )? "." formula ;
//   atom    := term ("="|"in"|"<:") term | "Set" "(" term ")" | macro ;
//   macro   := NAME "(" term ("," term)* ")"
//            | NAME "[" IDENT ":" formula "]" "(" term ")" ;
//   term    := IDENT | "'" IDENT "'"

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_whole() {
    Formula f = parse_iff();
    expect(Tok::end);
    return f;
  }

  std::pair<std::string, Formula> parse_binder_predicate() {
    Token var = expect(Tok::ident);
    expect(Tok::colon);
    Formula f = parse_iff();
    expect(Tok::end);
    return {var.text, std::move(f)};
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok t) {
    if (peek().type == t) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Tok t) {
    if (peek().type != t) fail({describe(t)});
    return advance();
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string got =
        t.type == Tok::end ? "end of input" : "'" + t.text + "'";
    throw parse_error("unexpected " + got, t.line, t.column,
                      std::move(expected));
  }

  Formula parse_iff() {
    Formula f = parse_impl();
    while (accept(Tok::iff)) f = Formula::equivalence(f, parse_impl());
    return f;
  }

  Formula parse_impl() {
    Formula f = parse_or();
    if (accept(Tok::arrow)) return Formula::implication(f, parse_impl());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::pipe)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::amp)) f = Formula::conjunction(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::tilde)) return Formula::negation(parse_unary());
    if (peek().type == Tok::kw_all || peek().type == Tok::kw_ex)
      return parse_quant();
    if (accept(Tok::lparen)) {
      Formula f = parse_iff();
      expect(Tok::rparen);
      return f;
    }
    return parse_atom();
  }

  Formula parse_quant() {
    bool universal = advance().type == Tok::kw_all;
    Token var = expect(Tok::ident);
    enum { unsorted, pt, set } sort = unsorted;
    if (accept(Tok::colon)) {
      if (peek().type == Tok::kw_pt) sort = pt;
      else if (peek().type == Tok::kw_set) sort = set;
      else fail({"'PT'", "'Set'"});
      advance();
    }
    expect(Tok::dot);
    Formula body = parse_iff();
    // Sorted quantifiers are sugar: "all v:PT. f" guards with T(v),
    // "ex v:PT. f" conjoins it; Set sorts use the Set(_) atom.
    if (sort != unsorted) {
      Formula guard = sort == pt ? Formula::macro("T", {Term::var(var.text)})
                                 : Formula::set_pred(Term::var(var.text));
      body = universal ? Formula::implication(std::move(guard), std::move(body))
                       : Formula::conjunction(std::move(guard), std::move(body));
    }
    return universal ? Formula::forall(var.text, std::move(body))
                     : Formula::exists(var.text, std::move(body));
  }

  Formula parse_atom() {
    if (peek().type == Tok::kw_set) {
      advance();
      expect(Tok::lparen);
      Term t = parse_term();
      expect(Tok::rparen);
      return Formula::set_pred(std::move(t));
    }
    if (peek().type == Tok::ident &&
        (peek(1).type == Tok::lparen || peek(1).type == Tok::lbracket))
      return parse_macro();
    Term lhs = parse_term();
    if (accept(Tok::equals)) return Formula::equal(std::move(lhs), parse_term());
    if (accept(Tok::kw_in)) return Formula::member(std::move(lhs), parse_term());
    if (accept(Tok::part_of)) return Formula::part(std::move(lhs), parse_term());
    fail({"'='", "'in'", "'<:'"});
  }

  Formula parse_macro() {
    Token name = advance();
    auto sig = macro_signatures().find(name.text);
    if (sig == macro_signatures().end())
      throw parse_error("unknown macro name '" + name.text + "'", name.line,
                        name.column);
    if (accept(Tok::lbracket)) {
      if (!sig->second.takes_predicate)
        throw parse_error("macro '" + name.text +
                              "' does not take a predicate argument",
                          name.line, name.column);
      Token binder = expect(Tok::ident);
      expect(Tok::colon);
      Formula pred = parse_iff();
      expect(Tok::rbracket);
      expect(Tok::lparen);
      Term arg = parse_term();
      expect(Tok::rparen);
      return Formula::macro(name.text, binder.text, std::move(pred),
                            std::move(arg));
    }
    expect(Tok::lparen);
    std::vector<Term> args;
    args.push_back(parse_term());
    while (accept(Tok::comma)) args.push_back(parse_term());
    expect(Tok::rparen);
    if (sig->second.takes_predicate)
      throw parse_error("macro '" + name.text +
                            "' requires a [var: formula] predicate argument",
                        name.line, name.column);
    if (static_cast<int>(args.size()) != sig->second.term_arity)
      throw parse_error(
          "macro '" + name.text + "' takes " +
              std::to_string(sig->second.term_arity) + " term argument(s), got " +
              std::to_string(args.size()),
          name.line, name.column);
    return Formula::macro(name.text, std::move(args));
  }

  Term parse_term() {
    if (peek().type == Tok::constant) return Term::constant(advance().text);
    if (peek().type == Tok::ident) return Term::var(advance().text);
    fail({"identifier", "constant"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  return Parser(lex(text)).parse_whole();
}

std::pair<std::string, Formula> parse_predicate(std::string_view text) {
  return Parser(lex(text)).parse_binder_predicate();
}

// ---------------------------------------------------------------------------
// Renderer. Quantifier scope extends maximally to the right, so a quantified
// subformula is parenthesized unless it sits in tail position of the text
// produced so far; `tail` tracks exactly that.

namespace {

int precedence(Kind k) {
  switch (k) {
    case Kind::iff: return 0;
    case Kind::implies: return 1;
    case Kind::logic_or: return 2;
    case Kind::logic_and: return 3;
    case Kind::logic_not:
    case Kind::forall:
    case Kind::exists: return 4;
    default: return 5;
  }
}

void render_term(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += t.name;
  } else {
    out += '\'';
    out += t.name;
    out += '\'';
  }
}

void render_into(const Formula& f, int min_prec, bool tail, std::string& out);

void render_node(const Formula& f, bool tail, std::string& out) {
  switch (f.kind()) {
    case Kind::equal:
    case Kind::member:
    case Kind::part: {
      const char* op = f.kind() == Kind::equal ? " = "
                       : f.kind() == Kind::member ? " in "
                                                  : " <: ";
      render_term(f.terms()[0], out);
      out += op;
      render_term(f.terms()[1], out);
      return;
    }
    case Kind::set_pred:
      out += "Set(";
      render_term(f.terms()[0], out);
      out += ')';
      return;
    case Kind::logic_not: {
      out += '~';
      // Parenthesize everything except self-delimiting operands; keeps the
      // output readable and the scope unambiguous.
      Kind k = f.left().kind();
      if (k == Kind::set_pred || k == Kind::macro || k == Kind::logic_not) {
        render_node(f.left(), tail, out);
      } else {
        out += '(';
        render_into(f.left(), 0, true, out);
        out += ')';
      }
      return;
    }
    case Kind::logic_and:
      render_into(f.left(), 3, false, out);
      out += " & ";
      render_into(f.right(), 4, tail, out);
      return;
    case Kind::logic_or:
      render_into(f.left(), 2, false, out);
      out += " | ";
      render_into(f.right(), 3, tail, out);
      return;
    case Kind::implies:
      render_into(f.left(), 2, false, out);
      out += " -> ";
      render_into(f.right(), 1, tail, out);
      return;
    case Kind::iff:
      render_into(f.left(), 0, false, out);
      out += " <-> ";
      render_into(f.right(), 1, tail, out);
      return;
    case Kind::forall:
    case Kind::exists:
      out += f.kind() == Kind::forall ? "all " : "ex ";
      out += f.var();
      out += ". ";
      render_into(f.left(), 0, true, out);
      return;
    case Kind::macro:
      out += f.macro_name();
      if (f.has_predicate()) {
        out += '[';
        out += f.var();
        out += ": ";
        render_into(f.left(), 0, true, out);
        out += "](";
        render_term(f.terms()[0], out);
        out += ')';
      } else {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i > 0) out += ", ";
          render_term(f.terms()[i], out);
        }
        out += ')';
      }
      return;
  }
}

void render_into(const Formula& f, int min_prec, bool tail, std::string& out) {
  bool wrap = precedence(f.kind()) < min_prec ||
              (is_quantifier(f.kind()) && !tail);
  if (wrap) {
    out += '(';
    render_node(f, true, out);
    out += ')';
  } else {
    render_node(f, tail, out);
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, true, out);
  return out;
}

// ---------------------------------------------------------------------------
// Axiom sentences and schemas

namespace {

const std::vector<std::pair<std::string, std::string>>& axiom_sources() {
  // ∅, ∪ and {x} have no function symbols here; where the usual statements
  // use them the sentences below spell out the first-order definitions.
  static const std::vector<std::pair<std::string, std::string>> sources = {
      {"extensionality",
       "all x:Set. all y:Set. ((all z. (z in x <-> z in y)) -> x = y)"},
      {"union", "all x. all y. ex t:Set. all z. (z in t <-> (z in x | z in y))"},
      {"power_set",
       "all x:Set. ex y:Set. all t:Set. (t in y <-> all w. (w in t -> w in x))"},
      {"empty_set", "ex t:Set. all x. ~(x in t)"},
      {"amalgamation",
       "all x:Set. ((all y. (y in x -> Set(y))) -> ex z:Set. all t. (t in z "
       "<-> ex v. (v in x & t in v)))"},
      {"infinity",
       "ex z:Set. ((ex e:Set. (e in z & all w. ~(w in e))) & all x. (x in z "
       "-> ex s:Set. (s in z & all w. (w in s <-> (w in x | w = x)))))"},
      {"choice",
       "all x:Set. (((all y. (y in x -> Set(y))) & (all y. (y in x -> ex w. w "
       "in y)) & (all y. all z. ((y in x & z in x & ~(y = z)) -> ~(ex w. (w "
       "in y & w in z))))) -> ex u:Set. all y. (y in x -> ex v. (v in y & v "
       "in u & all w. ((w in y & w in u) -> w = v))))"},
      {"foundation",
       "all x:Set. (((ex w. w in x) & (all y. (y in x -> Set(y)))) -> ex z. "
       "(z in x & ~(ex w. (w in z & w in x))))"},
      {"reflexivity_part", "all a:PT. a <: a"},
      {"transitivity_part",
       "all a:PT. all b:PT. all g:PT. ((a <: b & b <: g) -> a <: g)"},
      {"existence_of_sums", "all x. ex a:PT. Sum(x, a)"},
  };
  return sources;
}

}  // namespace

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : axiom_sources()) out.push_back(name);
    return out;
  }();
  return names;
}

Formula axiom_sentence(std::string_view name) {
  static const std::map<std::string, Formula, std::less<>> parsed = [] {
    std::map<std::string, Formula, std::less<>> out;
    for (const auto& [n, text] : axiom_sources()) out.emplace(n, parse(text));
    return out;
  }();
  auto it = parsed.find(name);
  if (it == parsed.end())
    throw error("unknown axiom name '" + std::string(name) + "'");
  return it->second;
}

Formula instantiate_schema(Schema schema, const Formula& f,
                           const std::string& x, const std::string& y) {
  auto vars = free_vars(f);
  auto require_absent = [&](const char* name) {
    if (x == name || (schema == Schema::replacement && y == name) ||
        vars.count(name))
      throw error(std::string("variable-condition violation: '") + name +
                  "' is a schema variable and must not occur free in the "
                  "formula (nor be the designated variable)");
  };

  if (schema == Schema::separation) {
    if (x.empty()) throw error("separation needs a designated variable");
    if (!vars.count(x))
      throw error("designated variable '" + x +
                  "' does not occur free in the formula");
    require_absent("y");
    require_absent("z");
    vars.erase(x);
    if (!vars.empty())
      throw error("schema instance would not be closed: variable '" +
                  *vars.begin() + "' occurs free in the formula");
    // all z:Set. ex y:Set. all x. (x in y <-> (F(x) & x in z))
    Term tx = Term::var(x), ty = Term::var("y"), tz = Term::var("z");
    return Formula::forall(
        "z",
        Formula::implication(
            Formula::set_pred(tz),
            Formula::exists(
                "y",
                Formula::conjunction(
                    Formula::set_pred(ty),
                    Formula::forall(
                        x, Formula::equivalence(
                               Formula::member(tx, ty),
                               Formula::conjunction(
                                   f, Formula::member(tx, tz))))))));
  }

  // Replacement.
  if (x.empty() || y.empty())
    throw error("replacement needs two designated variables");
  if (x == y) throw error("replacement's designated variables must differ");
  for (const std::string& v : {x, y})
    if (!vars.count(v))
      throw error("designated variable '" + v +
                  "' does not occur free in the formula");
  require_absent("u");
  require_absent("v");
  vars.erase(x);
  vars.erase(y);
  if (!vars.empty())
    throw error("schema instance would not be closed: variable '" +
                *vars.begin() + "' occurs free in the formula");

  std::set<std::string> used;
  all_var_names(f, used);
  used.insert({x, y, "u", "v"});
  std::string w = fresh_name(used, "w");

  // (all x. ex y. (F & all w. (F[w/y] -> w = y)))
  //   -> all u:Set. ex v:Set. all y. (y in v <-> ex x. (x in u & F))
  Term tx = Term::var(x), ty = Term::var(y), tu = Term::var("u"),
       tv = Term::var("v"), tw = Term::var(w);
  Formula functional = Formula::forall(
      x, Formula::exists(
             y, Formula::conjunction(
                    f, Formula::forall(
                           w, Formula::implication(rename_free(f, y, w),
                                                   Formula::equal(tw, ty))))));
  Formula image = Formula::forall(
      "u",
      Formula::implication(
          Formula::set_pred(tu),
          Formula::exists(
              "v", Formula::conjunction(
                       Formula::set_pred(tv),
                       Formula::forall(
                           y, Formula::equivalence(
                                  Formula::member(ty, tv),
                                  Formula::exists(
                                      x, Formula::conjunction(
                                             Formula::member(tx, tu), f))))))));
  return Formula::implication(std::move(functional), std::move(image));
}

}  // namespace zfstar
