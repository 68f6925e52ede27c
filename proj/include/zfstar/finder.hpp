#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zfstar/formula.hpp"
#include "zfstar/mereology.hpp"
#include "zfstar/model.hpp"

namespace zfstar::finder {

// Hard ceiling on the domain size; the candidate space grows as
// 2^(n^2)-scale per relation and this is a desk-scale tool.
inline constexpr int kMaxDomainSize = 5;

struct SearchSpec {
  enum class Mode { find_model, find_countermodel, count };

  int max_size = 3;
  std::vector<std::string> axioms = pt_axioms();
  std::optional<Formula> target;  // closed; required unless mode == count
  Mode mode = Mode::find_model;
  bool symmetry_reduction = false;
  bool parallel = true;
};

// Canonical element names e1..en used by every enumerated structure.
std::vector<std::string> canonical_elements(int size);

// Every structure over e1..e<size> passing validation and the axiom set:
// all set/PT taggings (binary-counter order over the element list) x all
// legal membership relations x all legal parthood relations (each counted
// over its candidate pairs in lexicographic order). Deterministic; with
// symmetry_reduction only the first structure of each isomorphism class is
// kept. The OpenMP kernel partitions the candidate space and merges results
// back into canonical order.
std::vector<Structure> enumerate_structures(int size,
                                            const std::vector<std::string>& axioms,
                                            bool symmetry_reduction = false,
                                            bool parallel = true);

std::uint64_t count_models(int size, const std::vector<std::string>& axioms,
                           bool symmetry_reduction = false,
                           bool parallel = true);

struct FindResult {
  Structure structure;
  int size = 0;
  std::uint64_t candidate_index = 0;  // position in the size's candidate space
};

// Smallest structure (by size, then enumeration order) satisfying the axiom
// set and the target; nullopt when the search space is exhausted.
std::optional<FindResult> find_model(const SearchSpec& spec);

// As find_model with the target negated.
std::optional<FindResult> find_countermodel(const SearchSpec& spec);

// Straightforward single-threaded enumerator kept as a cross-check for the
// kernel above: independent candidate generation, axiom checking through
// check_axioms' public route, and pairwise isomorphism tests for the
// symmetry mode. Produces the same sequences.
namespace reference {

std::vector<Structure> enumerate_structures(int size,
                                            const std::vector<std::string>& axioms,
                                            bool symmetry_reduction = false);

std::uint64_t count_models(int size, const std::vector<std::string>& axioms,
                           bool symmetry_reduction = false);

}  // namespace reference

}  // namespace zfstar::finder
