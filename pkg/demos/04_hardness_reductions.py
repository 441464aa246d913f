#!/usr/bin/env python3
"""The hardness machinery, end to end on a desk-sized instance.

Finding a minimum-size DAG compression is as hard as set cover. The
reduction closes the collection under singletons and initial segments
(which pins down the optimal compression size of its twinned incidence
graph exactly), appends the universe, and asks for a compression within
s + k + 2. The exact oracles below confirm the equivalence, and the same
pipeline produces the single-edge update instances.
"""

from dagzip import (
    SetCoverInstance,
    canonical_closure_compression,
    check_sandwich,
    close_standard_order,
    closure_compression_size,
    decompress,
    reduce_add,
    reduce_delete,
    reduce_mindag,
    setcover_exhaustive,
    twinned_incidence,
    twinned_optimum,
    validate,
)

inst = SetCoverInstance(n=3, sets=(frozenset({1, 2}), frozenset({3}), frozenset({2, 3})), k=2)
kmin, witness = setcover_exhaustive(inst)
print(f"set cover: minimum {kmin} via sets {witness}")

family = close_standard_order(inst)
print("closure:", [sorted(s) for s in family.sets])
comp = canonical_closure_compression(family)
print("canonical compression size:", comp.size(), "=", closure_compression_size(family))
assert validate(comp) == []
assert decompress(comp) == twinned_incidence(family).graph

opt, _ = twinned_optimum(family.sets, inst.n)
print("exact optimum for the twinned incidence graph:", opt, "(construction is optimal)")

out = reduce_mindag(inst)
opt_target, _ = twinned_optimum(out.twinned.sets, inst.n)
print(f"\nmindag instance: threshold k' = {out.k_prime}, true optimum {opt_target}")
print("decision (<= k')  :", opt_target <= out.k_prime)
print("cover exists (<=k):", kmin <= inst.k)

ai = reduce_add(inst)
print(f"\nadd instance: compression size {ai.compression.size()}, "
      f"new edge {ai.new_edge}, threshold {ai.k_new}")
di = reduce_delete(inst)
print(f"delete instance: compression size {di.compression.size()}, "
      f"removed edge {di.removed_edge}, threshold {di.k_new}")

# adding one set to a family moves the optimum by a controlled amount:
# cover-number below, exact-cover-number above (plus the two twin edges)
rep = check_sandwich((frozenset({1}), frozenset({2}), frozenset({3, 4})),
                     frozenset({1, 2}), 4)
print(f"\nsandwich for R={{1,2}}: s={rep.s}, s'={rep.s_prime}, "
      f"k_sup={rep.k_sup}, k_eq={rep.k_eq}, holds={rep.holds}")
