#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zfstar/formula.hpp"
#include "zfstar/model.hpp"
#include "zfstar/semantics.hpp"

namespace zfstar {

enum class AxiomVerdict { pass, fail, not_finitely_checkable };

std::string to_string(AxiomVerdict v);

struct AxiomOutcome {
  std::string axiom;
  AxiomVerdict verdict = AxiomVerdict::pass;
  // On failure: bindings for the leading universal variables under which
  // `falsified` evaluates to false in the structure.
  Environment witness;
  std::optional<Formula> falsified;
};

struct AxiomReport {
  std::vector<AxiomOutcome> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (e.verdict == AxiomVerdict::fail) return false;
    return true;
  }
};

// The parthood axioms: reflexivity_part, transitivity_part,
// existence_of_sums. Default axiom set everywhere; the pure set axioms have
// no finite models worth imposing by default.
const std::vector<std::string>& pt_axioms();

// Axioms whose satisfaction is decidable on a finite structure: the PT
// axioms plus extensionality, empty_set and foundation.
const std::vector<std::string>& finitely_checkable_axioms();

bool is_finitely_checkable(std::string_view axiom);

// Macro-free form of an axiom sentence, cached.
const Formula& expanded_axiom(std::string_view name);

// Checks each named axiom against s. Finitely checkable axioms get
// pass/fail (failures carry a falsifying witness); the remaining axioms are
// reported not_finitely_checkable, never pass/fail. Unknown names are an
// error.
AxiomReport check_axioms(const Structure& s,
                         const std::vector<std::string>& axioms = pt_axioms());

// True when every named axiom holds; no witness extraction. Errors on
// axioms that are not finitely checkable.
bool axioms_hold(const Structure& s, const std::vector<std::string>& axioms);

struct CantorianResult {
  bool positive = false;
  // Every set whose members are exactly the parts of the subject, in
  // declaration order. Nonempty iff positive.
  std::vector<std::string> witnesses;
};

// Whether some set collects exactly the parts of alpha (which must be a PT).
CantorianResult is_cantorian(const Structure& s, const std::string& alpha);

// Member count of the collecting set when alpha is cantorian; disengaged
// otherwise — a non-cantorian PT has no cardinal, and that is a result, not
// an error.
std::optional<std::size_t> cardinal(const Structure& s,
                                    const std::string& alpha);

// Both arguments must be PTs; evaluated through the macro expansions.
bool disjoint(const Structure& s, const std::string& alpha,
              const std::string& beta);
bool indiscernible(const Structure& s, const std::string& alpha,
                   const std::string& beta);

// Partition of the PT sort by mutual parthood. Requires reflexivity_part
// and transitivity_part to hold (error names the failing axiom otherwise).
std::vector<std::vector<std::string>> indiscernibility_classes(
    const Structure& s);

// Every PT behaving as the fusion of the members of set x. When x has a
// non-PT member the defining condition holds vacuously and all PTs are
// returned.
std::vector<std::string> sums(const Structure& s, const std::string& x);

// Every PT that is a part of beta all of whose parts are indiscernible from
// it. May be empty.
std::vector<std::string> irreducible_parts(const Structure& s,
                                           const std::string& beta);

struct ClassificationReport {
  std::string subject;
  // Rendered "binder: formula" when classifying with respect to a predicate;
  // absent for the plain parts-form-a-set question.
  std::optional<std::string> predicate;
  // true = cantorian (plain) / classical (with predicate).
  bool positive = false;
  std::vector<std::string> witnesses;
  // Present iff positive and no predicate was given.
  std::optional<std::size_t> cardinal;

  std::string verdict_word() const {
    if (predicate) return positive ? "classical" : "quantal";
    return positive ? "cantorian" : "non-cantorian";
  }
};

// Plain classification: cantorian with witness and cardinal, or
// non-cantorian with the cardinal undefined.
ClassificationReport classify(const Structure& s, const std::string& alpha);

// Classification with respect to a predicate: classical iff some set
// collects exactly the parts of alpha satisfying it. The predicate may have
// no free variables besides the binder.
ClassificationReport classify(const Structure& s, const std::string& alpha,
                              const std::string& binder,
                              const Formula& predicate);

}  // namespace zfstar
