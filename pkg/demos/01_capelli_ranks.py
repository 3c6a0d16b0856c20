"""Capelli ranks and where Capelli values live.

UT(d_1,...,d_m) satisfies Cap_{d+m} with d = sum of d_i^2.  The lowest
non-identity Capelli polynomial lands in the (m-1)-th power of the radical.
Run:  python demos/01_capelli_ranks.py
"""

from gradedpi import FgAbelianGroup, ElementarySpec, build_ut_elementary, capelli, radical_power
from gradedpi.identities import capelli_rank_witness, nonzero_values
from gradedpi.ut import capelli_bound

trivial = FgAbelianGroup(0)

for blocks in [(1, 1), (2,), (1, 1, 1)]:
    spec = ElementarySpec.over(trivial, blocks, [[]] * sum(blocks))
    alg = build_ut_elementary(spec)
    t, w = capelli_rank_witness(alg)
    print(f"UT{blocks}: rank {t} (bound d+m = {capelli_bound(blocks)})")
    print(f"    Cap_{t - 1} survives at {w.witness}")
    print(f"    value {w.value}")

# Values of Cap_6 on UT(2,1) all sit in the strictly upper block part.
spec = ElementarySpec.over(trivial, (2, 1), [[]] * 3)
alg = build_ut_elementary(spec)
rad = set(radical_power(spec, 1))
labels = sorted({alg.labels[i] for _, v in nonzero_values(capelli(6), alg) for i in v.coeffs})
print(f"\nCap_6 on UT(2,1) takes values in span{labels}")
print(f"J(UT(2,1)) is spanned by {[alg.labels[i] for i in sorted(rad)]}")
