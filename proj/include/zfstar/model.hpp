#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zfstar/error.hpp"

namespace zfstar {

struct Violation {
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// A finite two-sorted interpretation: elements tagged set or PT, a
// membership relation (containers must be sets) and a parthood relation
// (both endpoints must be PTs). Immutable after construction; the element
// list order is the canonical iteration order for every derived output.
class Structure {
 public:
  using Pair = std::pair<std::string, std::string>;

  Structure() = default;
  Structure(std::vector<std::string> elements, std::vector<std::string> sets,
            std::vector<Pair> membership, std::vector<Pair> parthood);

  // Parses the JSON model format. Throws model_error on malformed input or
  // when the structure breaks an invariant.
  static Structure load(std::string_view text);
  static Structure load_file(const std::string& path);

  // Serializes back to the model format; element, set and pair order are
  // preserved, so load(save(s)) == s.
  std::string save() const;

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::string& name_of(std::size_t i) const { return elements_[i]; }

  bool is_set(std::size_t i) const { return tags_[i]; }
  bool is_pt(std::size_t i) const { return !tags_[i]; }
  bool membership_bit(std::size_t member, std::size_t container) const {
    return mem_[member * elements_.size() + container];
  }
  bool parthood_bit(std::size_t part, std::size_t whole) const {
    return part_[part * elements_.size() + whole];
  }

  // Raw data as given at construction time.
  const std::vector<std::string>& set_list() const { return sets_list_; }
  const std::vector<Pair>& membership() const { return mem_list_; }
  const std::vector<Pair>& parthood() const { return part_list_; }

  // Every invariant violation, with the offending name or pair. Empty for
  // valid structures.
  std::vector<Violation> validate() const;

  // All elements standing in parthood to `element` (which must be a PT), in
  // declaration order.
  std::vector<std::string> parts(std::string_view element) const;
  // All members of `element`, in declaration order; empty for PTs.
  std::vector<std::string> members(std::string_view element) const;

  // Equality of interpretations: same element list, tags and relations
  // (input pair order does not matter).
  bool operator==(const Structure& other) const {
    return elements_ == other.elements_ && tags_ == other.tags_ &&
           mem_ == other.mem_ && part_ == other.part_;
  }

 private:
  std::vector<std::string> elements_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<bool> tags_;  // by element index; true = set
  std::vector<bool> mem_, part_;  // n*n bit matrices, row = first component
  std::vector<std::string> sets_list_;
  std::vector<Pair> mem_list_, part_list_;
};

std::vector<Violation> validate(const Structure& s);

}  // namespace zfstar
