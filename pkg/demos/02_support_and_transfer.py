"""Reading the division part of R = UT(1,1)(e,a) ⊗ Pauli[2] off its identities.

The grading group is Z x Z/2 x Z/2: Z carries the shift a, the torsion part
carries the Pauli grading.  Capelli-type tests on R recover the support of
the division factor, and an A-good polynomial transfers identities of B to R.
"""

from gradedpi import (
    DivisionFactor,
    ElementarySpec,
    FgAbelianGroup,
    GradedPolynomial,
    GradedVariable,
    a_good,
    build_ut_elementary,
    division_transfer_check,
    recover_division_support,
    tensor,
)

G = FgAbelianGroup(1, (2, 2))
spec = ElementarySpec.over(G, (1, 1), [[0, 0, 0], [1, 0, 0]])
B = DivisionFactor.pauli([2], G, images=[[0, 1, 0], [0, 0, 1]])
R = tensor(build_ut_elementary(spec), B.algebra())
print(f"R has dimension {R.dim}, support of size {len(R.support)}")

H = recover_division_support(R)
print("recovered division support:", [g.coords for g in H.elements()])
print("matches the declared factor:", H == B.support())

f, t = a_good(spec)
print(f"\nA-good polynomial for UT(1,1)(e,a): f = {f}, t = {t}")

x, z = G(0, 1, 0), G(0, 0, 1)
u, v = GradedVariable("u", x), GradedVariable("v", z)
tests = {
    "u v + v u": GradedPolynomial([u, v], {("u", "v"): 1, ("v", "u"): 1}),
    "u v - v u": GradedPolynomial([u, v], {("u", "v"): 1, ("v", "u"): -1}),
}
for text, g in tests.items():
    on_b, on_r = division_transfer_check(g, spec, B, good=(f, t))
    print(f"  {text:10s} identity of B: {on_b!s:5s}  transferred identity of R: {on_r}")
