#!/usr/bin/env python3
# Brute-force structure counts, independent of the C++ finder.
import itertools

def subsets(pairs):
    for mask in range(1 << len(pairs)):
        yield frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)

def structures(n):
    dom = range(n)
    for tags in itertools.product([False, True], repeat=n):  # True = set
        sets = [e for e in dom if tags[e]]
        pts = [e for e in dom if not tags[e]]
        for mem in subsets([(a, b) for a in dom for b in sets]):
            for part in subsets([(a, b) for a in pts for b in pts]):
                yield tags, mem, part

def disjoint(a, b, pts, part):
    return not any((g, a) in part and (g, b) in part for g in pts)
def is_sum(x, a, tags, mem, part, dom, pts):
    members = [y for y in dom if (y, x) in mem]
    if not tags[x] or any(tags[y] for y in members):
        return True
    return all(disjoint(g, a, pts, part) ==
               all(disjoint(b, g, pts, part) for b in members) for g in pts)

def holds(axiom, tags, mem, part, n):
    dom = range(n)
    sets, pts = [e for e in dom if tags[e]], [e for e in dom if not tags[e]]
    mems = lambda x: frozenset(y for y in dom if (y, x) in mem)
    if axiom == "reflexivity_part":
        return all((a, a) in part for a in pts)
    if axiom == "transitivity_part":
        return all((a, c) in part for a in pts for b in pts for c in pts
                   if (a, b) in part and (b, c) in part)
    if axiom == "existence_of_sums":
        return all(any(is_sum(x, a, tags, mem, part, dom, pts) for a in pts)
                   for x in dom)
    if axiom == "extensionality":
        return all(x == y for x in sets for y in sets if mems(x) == mems(y))
    return all(any(not (mems(z) & mems(x)) for z in mems(x)) for x in sets
               if mems(x) and all(tags[y] for y in mems(x)))  # foundation

PT = ["reflexivity_part", "transitivity_part", "existence_of_sums"]
AXIOM_SETS = {"none": [], "pt": PT,
              "pt_ext_found": PT + ["extensionality", "foundation"]}
for size in (1, 2):
    for name, axioms in AXIOM_SETS.items():
        print(size, name, sum(1 for t, m, p in structures(size)
                              if all(holds(a, t, m, p, size) for a in axioms)))
