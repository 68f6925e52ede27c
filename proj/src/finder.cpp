#include "zfstar/finder.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>

#include "zfstar/semantics.hpp"

namespace zfstar::finder {

namespace {

constexpr std::uint64_t kChunk = 4096;

void check_size(int size) {
  if (size < 1 || size > kMaxDomainSize)
    throw error("domain size must be between 1 and " +
                std::to_string(kMaxDomainSize) + ", got " +
                std::to_string(size));
}

std::vector<Formula> resolve_axioms(const std::vector<std::string>& names) {
  std::vector<Formula> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    if (!is_finitely_checkable(name))
      throw error("axiom '" + name +
                  "' is not finitely checkable and cannot be imposed on a "
                  "search");
    out.push_back(expanded_axiom(name));
  }
  return out;
}

// A candidate structure, packed. Relation bit (i, j) lives at position
// i*n + j (n <= 5, so 25 bits suffice). Satisfies the evaluator's domain
// interface, so candidates run the exact satisfaction semantics.
struct PackedDomain {
  int n = 0;
  std::uint32_t tags = 0;  // bit i = element i is a set
  std::uint32_t mem = 0;
  std::uint32_t part = 0;

  std::size_t size() const { return static_cast<std::size_t>(n); }
  bool is_set(std::size_t i) const { return tags >> i & 1; }
  bool membership_bit(std::size_t a, std::size_t b) const {
    return mem >> (a * n + b) & 1;
  }
  bool parthood_bit(std::size_t a, std::size_t b) const {
    return part >> (a * n + b) & 1;
  }
  std::optional<std::size_t> index_of(std::string_view name) const {
    // canonical names e1..en
    if (name.size() < 2 || name[0] != 'e') return std::nullopt;
    int v = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    if (v < 1 || v > n) return std::nullopt;
    return static_cast<std::size_t>(v - 1);
  }
};

// One tagging's slice of the candidate space: the legal relation pairs (in
// lexicographic order) and the block of global candidate indices it covers.
struct TaggingSpace {
  std::uint32_t tags = 0;
  std::vector<std::uint8_t> mem_slot_bit;   // slot k -> packed bit position
  std::vector<std::uint8_t> part_slot_bit;
  std::array<std::int8_t, 32> mem_slot_of{};   // packed bit -> slot, -1 = none
  std::array<std::int8_t, 32> part_slot_of{};
  std::uint64_t mem_count = 1;
  std::uint64_t part_count = 1;
  std::uint64_t base = 0;  // global index of the block's first candidate
};

// Taggings run in binary-counter order over the element list: e1 is the
// most significant digit, PT < Set.
std::uint32_t tags_of_index(int t_index, int n) {
  std::uint32_t tags = 0;
  for (int i = 0; i < n; ++i)
    if (t_index >> (n - 1 - i) & 1) tags |= 1u << i;
  return tags;
}

int index_of_tags(std::uint32_t tags, int n) {
  int t_index = 0;
  for (int i = 0; i < n; ++i)
    if (tags >> i & 1) t_index |= 1 << (n - 1 - i);
  return t_index;
}

std::vector<TaggingSpace> build_spaces(int n) {
  std::vector<TaggingSpace> spaces(std::size_t{1} << n);
  std::uint64_t base = 0;
  for (int t = 0; t < (1 << n); ++t) {
    TaggingSpace& sp = spaces[t];
    sp.tags = tags_of_index(t, n);
    sp.mem_slot_of.fill(-1);
    sp.part_slot_of.fill(-1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int bit = i * n + j;
        if (sp.tags >> j & 1) {
          sp.mem_slot_of[bit] = static_cast<std::int8_t>(sp.mem_slot_bit.size());
          sp.mem_slot_bit.push_back(static_cast<std::uint8_t>(bit));
        }
        if (!(sp.tags >> i & 1) && !(sp.tags >> j & 1)) {
          sp.part_slot_of[bit] =
              static_cast<std::int8_t>(sp.part_slot_bit.size());
          sp.part_slot_bit.push_back(static_cast<std::uint8_t>(bit));
        }
      }
    }
    sp.mem_count = std::uint64_t{1} << sp.mem_slot_bit.size();
    sp.part_count = std::uint64_t{1} << sp.part_slot_bit.size();
    sp.base = base;
    base += sp.mem_count * sp.part_count;
  }
  return spaces;
}

std::uint64_t total_candidates(const std::vector<TaggingSpace>& spaces) {
  const TaggingSpace& last = spaces.back();
  return last.base + last.mem_count * last.part_count;
}

std::uint32_t expand_mask(std::uint64_t subset,
                          const std::vector<std::uint8_t>& slot_bit) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < slot_bit.size(); ++k)
    if (subset >> k & 1) out |= 1u << slot_bit[k];
  return out;
}

// Walks candidates in global-index order without re-decoding each index.
struct Cursor {
  const std::vector<TaggingSpace>* spaces;
  std::size_t space = 0;
  std::uint64_t mi = 0, pi = 0;

  void seek(std::uint64_t g) {
    space = 0;
    while (space + 1 < spaces->size() && (*spaces)[space + 1].base <= g)
      ++space;
    std::uint64_t rem = g - (*spaces)[space].base;
    pi = rem % (*spaces)[space].part_count;
    mi = rem / (*spaces)[space].part_count;
  }
  void next() {
    const TaggingSpace& sp = (*spaces)[space];
    if (++pi == sp.part_count) {
      pi = 0;
      if (++mi == sp.mem_count) {
        mi = 0;
        ++space;
      }
    }
  }
  PackedDomain domain(int n) const {
    const TaggingSpace& sp = (*spaces)[space];
    return PackedDomain{n, sp.tags, expand_mask(mi, sp.mem_slot_bit),
                        expand_mask(pi, sp.part_slot_bit)};
  }
};

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// A candidate is the representative of its isomorphism class iff no
// renaming of elements gives a candidate earlier in enumeration order,
// i.e. with a smaller (tagging index, membership subset, parthood subset)
// key. This makes kernel symmetry reduction agree exactly with the
// reference's keep-first-seen policy.
bool is_canonical(const std::vector<TaggingSpace>& spaces,
                  const std::vector<std::vector<int>>& perms, int n,
                  std::size_t t_index, std::uint64_t mi, std::uint64_t pi) {
  const TaggingSpace& sp = spaces[t_index];
  for (const auto& perm : perms) {
    std::uint32_t tags2 = 0;
    for (int i = 0; i < n; ++i)
      if (sp.tags >> i & 1) tags2 |= 1u << perm[i];
    std::size_t t2 = static_cast<std::size_t>(index_of_tags(tags2, n));
    if (t2 > t_index) continue;
    if (t2 < t_index) return false;
    const TaggingSpace& sp2 = spaces[t2];
    std::uint64_t m2 = 0;
    for (std::size_t k = 0; k < sp.mem_slot_bit.size(); ++k) {
      if (!(mi >> k & 1)) continue;
      int bit = sp.mem_slot_bit[k];
      m2 |= std::uint64_t{1} << sp2.mem_slot_of[perm[bit / n] * n + perm[bit % n]];
    }
    if (m2 > mi) continue;
    if (m2 < mi) return false;
    std::uint64_t p2 = 0;
    for (std::size_t k = 0; k < sp.part_slot_bit.size(); ++k) {
      if (!(pi >> k & 1)) continue;
      int bit = sp.part_slot_bit[k];
      p2 |= std::uint64_t{1} << sp2.part_slot_of[perm[bit / n] * n + perm[bit % n]];
    }
    if (p2 < pi) return false;
  }
  return true;
}

struct CandidateCheck {
  int n = 0;
  const std::vector<TaggingSpace>* spaces = nullptr;
  std::vector<Formula> axioms;           // macro-free
  std::optional<Formula> target;         // macro-free
  bool negate_target = false;
  bool symmetry = false;
  std::vector<std::vector<int>> perms;   // populated when symmetry

  bool operator()(const Cursor& cur) const {
    if (symmetry && !is_canonical(*spaces, perms, n, cur.space, cur.mi, cur.pi))
      return false;
    PackedDomain dom = cur.domain(n);
    detail::Evaluator<PackedDomain> ev(dom);
    for (const Formula& axiom : axioms)
      if (!ev.run(axiom)) return false;
    if (target && ev.run(*target) == negate_target) return false;
    return true;
  }
};

CandidateCheck make_check(int n, const std::vector<TaggingSpace>& spaces,
                          const std::vector<std::string>& axiom_names,
                          bool symmetry) {
  CandidateCheck check;
  check.n = n;
  check.spaces = &spaces;
  check.axioms = resolve_axioms(axiom_names);
  check.symmetry = symmetry;
  if (symmetry) check.perms = permutations(n);
  return check;
}

Structure materialize(const PackedDomain& dom) {
  std::vector<std::string> names = canonical_elements(dom.n);
  std::vector<std::string> sets;
  std::vector<Structure::Pair> mem, part;
  for (int i = 0; i < dom.n; ++i)
    if (dom.is_set(i)) sets.push_back(names[i]);
  for (int i = 0; i < dom.n; ++i) {
    for (int j = 0; j < dom.n; ++j) {
      if (dom.membership_bit(i, j)) mem.emplace_back(names[i], names[j]);
      if (dom.parthood_bit(i, j)) part.emplace_back(names[i], names[j]);
    }
  }
  return Structure(std::move(names), std::move(sets), std::move(mem),
                   std::move(part));
}

std::uint64_t scan_count(const std::vector<TaggingSpace>& spaces,
                         const CandidateCheck& check, bool parallel) {
  const std::uint64_t total = total_candidates(spaces);
  std::uint64_t count = 0;
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(dynamic) reduction(+ : count) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    Cursor cur{&spaces};
    cur.seek(begin);
    for (std::uint64_t g = begin; g < end; ++g, cur.next())
      if (check(cur)) ++count;
  }
  return count;
}

std::vector<std::pair<std::uint64_t, PackedDomain>> scan_collect(
    const std::vector<TaggingSpace>& spaces, const CandidateCheck& check,
    bool parallel) {
  const std::uint64_t total = total_candidates(spaces);
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<std::vector<std::pair<std::uint64_t, PackedDomain>>> buckets(
      static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    Cursor cur{&spaces};
    cur.seek(begin);
    auto& bucket = buckets[static_cast<std::size_t>(c)];
    for (std::uint64_t g = begin; g < end; ++g, cur.next())
      if (check(cur)) bucket.emplace_back(g, cur.domain(check.n));
  }
  std::vector<std::pair<std::uint64_t, PackedDomain>> out;
  for (auto& bucket : buckets)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::optional<std::pair<std::uint64_t, PackedDomain>> scan_first(
    const std::vector<TaggingSpace>& spaces, const CandidateCheck& check,
    bool parallel) {
  const std::uint64_t total = total_candidates(spaces);
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::atomic<std::uint64_t> best{UINT64_MAX};
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    if (begin >= best.load(std::memory_order_relaxed)) continue;
    const std::uint64_t end = std::min(total, begin + kChunk);
    Cursor cur{&spaces};
    cur.seek(begin);
    for (std::uint64_t g = begin; g < end; ++g, cur.next()) {
      if (g >= best.load(std::memory_order_relaxed)) break;
      if (!check(cur)) continue;
      std::uint64_t seen = best.load(std::memory_order_relaxed);
      while (g < seen &&
             !best.compare_exchange_weak(seen, g, std::memory_order_relaxed)) {
      }
      break;
    }
  }
  std::uint64_t g = best.load();
  if (g == UINT64_MAX) return std::nullopt;
  Cursor cur{&spaces};
  cur.seek(g);
  return std::make_pair(g, cur.domain(check.n));
}

std::optional<FindResult> search(const SearchSpec& spec, bool negate_target) {
  if (!spec.target) throw error("search needs a target formula");
  auto open = free_vars(*spec.target);
  if (!open.empty())
    throw error("target formula must be closed; '" + *open.begin() +
                "' occurs free");
  check_size(spec.max_size);
  Formula target = expand_macros(*spec.target);
  for (int n = 1; n <= spec.max_size; ++n) {
    auto spaces = build_spaces(n);
    CandidateCheck check =
        make_check(n, spaces, spec.axioms, spec.symmetry_reduction);
    check.target = target;
    check.negate_target = negate_target;
    if (auto hit = scan_first(spaces, check, spec.parallel))
      return FindResult{materialize(hit->second), n, hit->first};
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> canonical_elements(int size) {
  check_size(size);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(size));
  for (int i = 1; i <= size; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

std::vector<Structure> enumerate_structures(int size,
                                            const std::vector<std::string>& axioms,
                                            bool symmetry_reduction,
                                            bool parallel) {
  check_size(size);
  auto spaces = build_spaces(size);
  CandidateCheck check = make_check(size, spaces, axioms, symmetry_reduction);
  auto packed = scan_collect(spaces, check, parallel);
  std::vector<Structure> out;
  out.reserve(packed.size());
  for (const auto& [g, dom] : packed) out.push_back(materialize(dom));
  return out;
}

std::uint64_t count_models(int size, const std::vector<std::string>& axioms,
                           bool symmetry_reduction, bool parallel) {
  check_size(size);
  auto spaces = build_spaces(size);
  CandidateCheck check = make_check(size, spaces, axioms, symmetry_reduction);
  return scan_count(spaces, check, parallel);
}

std::optional<FindResult> find_model(const SearchSpec& spec) {
  return search(spec, false);
}

std::optional<FindResult> find_countermodel(const SearchSpec& spec) {
  return search(spec, true);
}

namespace reference {

namespace {

bool isomorphic(const Structure& a, const Structure& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i) {
      if (a.is_set(i) != b.is_set(pi[i])) ok = false;
      for (std::size_t j = 0; ok && j < n; ++j) {
        if (a.membership_bit(i, j) != b.membership_bit(pi[i], pi[j]) ||
            a.parthood_bit(i, j) != b.parthood_bit(pi[i], pi[j]))
          ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return false;
}

}  // namespace

std::vector<Structure> enumerate_structures(int size,
                                            const std::vector<std::string>& axioms,
                                            bool symmetry_reduction) {
  check_size(size);
  const int n = size;
  const std::vector<std::string> names = canonical_elements(n);
  std::vector<Structure> kept;
  for (int t = 0; t < (1 << n); ++t) {
    std::vector<bool> set_tag(static_cast<std::size_t>(n));
    std::vector<std::string> sets;
    for (int i = 0; i < n; ++i) {
      set_tag[static_cast<std::size_t>(i)] = t >> (n - 1 - i) & 1;
      if (set_tag[static_cast<std::size_t>(i)]) sets.push_back(names[i]);
    }
    std::vector<Structure::Pair> mem_pairs, part_pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (set_tag[static_cast<std::size_t>(j)])
          mem_pairs.emplace_back(names[i], names[j]);
        if (!set_tag[static_cast<std::size_t>(i)] &&
            !set_tag[static_cast<std::size_t>(j)])
          part_pairs.emplace_back(names[i], names[j]);
      }
    }
    for (std::uint64_t mi = 0; mi < (std::uint64_t{1} << mem_pairs.size());
         ++mi) {
      std::vector<Structure::Pair> mem;
      for (std::size_t k = 0; k < mem_pairs.size(); ++k)
        if (mi >> k & 1) mem.push_back(mem_pairs[k]);
      for (std::uint64_t pi = 0; pi < (std::uint64_t{1} << part_pairs.size());
           ++pi) {
        std::vector<Structure::Pair> part;
        for (std::size_t k = 0; k < part_pairs.size(); ++k)
          if (pi >> k & 1) part.push_back(part_pairs[k]);
        Structure s(names, sets, mem, part);
        if (!s.validate().empty()) continue;
        if (!axioms_hold(s, axioms)) continue;
        if (symmetry_reduction) {
          bool duplicate = false;
          for (const Structure& prev : kept)
            if (isomorphic(prev, s)) {
              duplicate = true;
              break;
            }
          if (duplicate) continue;
        }
        kept.push_back(std::move(s));
      }
    }
  }
  return kept;
}

std::uint64_t count_models(int size, const std::vector<std::string>& axioms,
                           bool symmetry_reduction) {
  return enumerate_structures(size, axioms, symmetry_reduction).size();
}

}  // namespace reference

}  // namespace zfstar::finder
