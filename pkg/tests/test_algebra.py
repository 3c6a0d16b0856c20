import cmath
import itertools
from fractions import Fraction

import pytest
from oracles import rank_of, unit_word, ut, ut_units

from gradedpi import (
    DivisionFactor,
    DivisionSpec,
    FgAbelianGroup,
    GradedAlgebra,
    GradingError,
    GroupError,
    GroupHom,
    build_pauli_division,
    build_ut_elementary,
    center_of,
    coarsen,
    decompose_neutral,
    is_division_grading,
    matrix_algebra,
    neutral_component,
    normalize_representatives,
    omega_and_invariance,
    quotient,
    radical_power,
    subgroup_generated,
    tensor,
    transport_grading,
    verify_associativity,
    verify_grading,
)
from gradedpi.algebra import direct_sum, left_multiplication_inverse, trivial_algebra
from gradedpi.cyclotomic import ONE, root_of_unity
from gradedpi.ut import block_invariance_subgroups, capelli_bound

Z = FgAbelianGroup(1)
Z2SQ = FgAbelianGroup(0, (2, 2))
Z4 = FgAbelianGroup(0, (4,))


def ut_fixtures():
    return [
        ut(Z, (1, 1), (0, 1)),
        ut(Z, (2, 1), (0, 1, 0)),
        ut(Z, (1, 1, 1), (0, 2, 5)),
        ut(Z2SQ, (2,), ((0, 0), (1, 0))),
        ut(Z4, (1, 2), (0, 3, 1)),
    ]


@pytest.mark.parametrize("spec", ut_fixtures(), ids=str)
def test_ut_structure_matches_matrix_units(spec):
    alg = build_ut_elementary(spec)
    units = ut_units(spec.block_sizes)
    assert alg.dim == len(units)
    g = spec.elements
    for a, (i, j) in enumerate(units):
        assert alg.degrees[a] == g[i] - g[j]
    for a, u in enumerate(units):
        for b, v in enumerate(units):
            w = unit_word([u, v])
            expected = () if w is None else ((units.index(w), ONE),)
            assert alg.mul_basis(a, b) == expected
    assert verify_grading(alg) == []
    assert verify_associativity(alg) == []
    assert alg.one() * alg.one() == alg.one()


def test_ut_small_examples():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    assert a.labels == ("e11", "e12", "e22")
    assert a.degrees[1] == Z(-1)
    m2 = build_ut_elementary(ut(Z, (2,), (0, 0)))
    assert m2.dim == 4 and m2.support == [Z(0)]
    # UT(2,1) with (e,h,e): support {e, h, -h}, neutral dim 4
    b = build_ut_elementary(ut(Z, (2, 1), (0, 1, 0)))
    assert set(b.support) == {Z(0), Z(1), Z(-1)}
    assert len(b.component(None)) == sum(1 for i, j in ut_units((2, 1)) if (0, 1, 0)[i] == (0, 1, 0)[j])
    assert len(b.component(None)) == 4
    assert capelli_bound((2, 1)) == 7


def pauli_matrices(n):
    z = cmath.exp(2j * cmath.pi / n)
    X = [[1 if i == (j + 1) % n else 0 for j in range(n)] for i in range(n)]
    Zm = [[z**i if i == j else 0 for j in range(n)] for i in range(n)]
    return X, Zm


def cmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def cpow(a, k):
    n = len(a)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = cmul(out, a)
    return out


def to_c(x):
    z = cmath.exp(2j * cmath.pi / x.order)
    return sum(complex(c) * z**k for k, c in enumerate(x.coeffs))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pauli_table_is_realized_by_clock_and_shift(n):
    alg, beta = build_pauli_division(DivisionSpec((n,)))
    X, Zm = pauli_matrices(n)
    # with Z X = zeta X Z the basis u_(a,b) = X^a Z^b obeys the stored table
    assert all(
        abs(p - q) < 1e-9
        for rp, rq in zip(cmul(Zm, X), [[to_c(root_of_unity(n)) * v for v in row] for row in cmul(X, Zm)])
        for p, q in zip(rp, rq)
    )
    mats = [cmul(cpow(X, g.coords[0]), cpow(Zm, g.coords[1])) for g in alg.degrees]
    for i, j in itertools.product(range(alg.dim), repeat=2):
        ((k, c),) = alg.mul_basis(i, j)
        lhs = cmul(mats[i], mats[j])
        rhs = [[to_c(c) * v for v in row] for row in mats[k]]
        assert all(abs(p - q) < 1e-9 for rp, rq in zip(lhs, rhs) for p, q in zip(rp, rq))
    # the n^2 matrices are linearly independent, so this is M_n
    flat = [[round(v.real, 9) + 1j * round(v.imag, 9) for row in m for v in row] for m in mats]
    assert len({tuple(f) for f in flat}) == n * n


def test_pauli_two_bicharacter_and_division():
    alg, beta = build_pauli_division(DivisionSpec((2,)))
    g = alg.group
    assert alg.dim == 4 and all(len(c) == 1 for c in alg.components.values())
    assert beta(g(1, 0), g(0, 1)) == -ONE
    assert beta.is_alternating() and beta.is_bimultiplicative()
    assert is_division_grading(alg)
    assert all(left_multiplication_inverse(b) * b == alg.one() for b in alg.basis())
    assert verify_grading(alg) == [] and verify_associativity(alg) == []


@pytest.mark.parametrize("pairs", [(), (1,), (3,), (2, 2), (2, 3)])
def test_pauli_invariants(pairs):
    spec = DivisionSpec(pairs)
    alg, beta = build_pauli_division(spec)
    assert alg.dim == spec.pi_degree**2
    assert beta.is_alternating() and beta.is_bimultiplicative()
    assert is_division_grading(alg)
    assert verify_grading(alg) == []


def test_division_factor_embedding():
    g = FgAbelianGroup(1, (2, 2))
    b = DivisionFactor.pauli([2], g, images=[[0, 1, 0], [0, 0, 1]])
    assert b.support().order == 4
    assert b.pi_degree == 2
    assert set(b.algebra().support) == set(b.support().elements())
    with pytest.raises(GroupError):
        DivisionFactor.pauli([2], FgAbelianGroup(0, (2, 2, 2)), images=[[1, 0, 0], [1, 0, 0]])


def test_tensor_dimensions_degrees_and_identity_case():
    a = build_ut_elementary(ut(Z2SQ, (1, 1), ((0, 0), (1, 0))))
    b, _ = build_pauli_division(DivisionSpec((2,)))
    r = tensor(a, b)
    assert r.dim == a.dim * b.dim
    assert sorted(r.degrees) == sorted(x + y for x in a.degrees for y in b.degrees)
    assert verify_grading(r) == [] and verify_associativity(r) == []
    k = tensor(a, trivial_algebra(a.group))
    assert k.degrees == a.degrees and k.dim == a.dim


def test_tensor_then_coarsen_equals_coarsen_then_tensor():
    a = build_ut_elementary(ut(Z2SQ, (2, 1), ((0, 0), (1, 0), (0, 1))))
    b, _ = build_pauli_division(DivisionSpec((2,)))
    phi = GroupHom.from_images(Z2SQ, FgAbelianGroup(0, (2,)), [[1], [1]])
    left = coarsen(tensor(a, b), phi)
    right = tensor(coarsen(a, phi), coarsen(b, phi))
    assert left.degrees == right.degrees and left.table == right.table


def test_coarsen_identity_and_trivial():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 3)))
    assert coarsen(a, GroupHom.identity(Z)).degrees == a.degrees
    flat = coarsen(a, GroupHom.trivial(Z))
    assert flat.support == [flat.group.identity]


def test_coarsened_degrees_along_quotient():
    g = FgAbelianGroup(1, (2, 2))
    spec = ut(g, (1, 1), ((0, 0, 0), (1, 0, 0)))
    b = DivisionFactor.pauli([2], g, images=[[0, 1, 0], [0, 0, 1]])
    q, alpha = quotient(g, b.support())
    r = coarsen(tensor(build_ut_elementary(spec), b.algebra()), alpha)
    # deg(e_ij ⊗ u) = alpha(g_i - g_j): the division factor disappears
    units = ut_units((1, 1))
    for idx, deg in enumerate(r.degrees):
        i, j = units[idx // 4]
        assert deg == alpha(spec.elements[i] - spec.elements[j])


def test_neutral_component_examples():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    e = neutral_component(a)
    assert e.labels == ("e11", "e22")
    m = matrix_algebra(2)
    assert neutral_component(m).dim == 4


def center_dim_oracle(blocks, units_subset):
    """dim of the center of span(units_subset), by a rank computation over Q."""
    n = len(units_subset)
    rows = []
    for b in units_subset:
        # coefficient of each output unit in [x, b] as a linear form in x
        outputs = {}
        for idx, u in enumerate(units_subset):
            for w, s in ((unit_word([u, b]), 1), (unit_word([b, u]), -1)):
                if w is not None:
                    outputs.setdefault(w, [0] * n)[idx] += s
        rows.extend(outputs.values())
    return n - (rank_of(rows) if rows else 0)


@pytest.mark.parametrize(
    "spec",
    [ut(Z, (2,), (0, 0)), ut(Z, (2, 1), (0, 0, 0)), ut(Z, (1, 1), (0, 1)), ut(Z, (2, 1), (0, 1, 0))],
    ids=str,
)
def test_center_dimension_matches_oracle(spec):
    a = build_ut_elementary(spec)
    ae = neutral_component(a)
    units = ut_units(spec.block_sizes)
    e_units = [u for u in units if spec.elements[u[0]] == spec.elements[u[1]]]
    assert len(center_of(ae)) == center_dim_oracle(spec.block_sizes, e_units)
    for z in center_of(ae):
        assert all(z.commutes_with(b) for b in ae.basis())


def test_center_examples():
    (z,) = center_of(matrix_algebra(2))
    assert z.coeffs.keys() == {0, 3} and z.coeffs[0] == z.coeffs[3]
    assert len(center_of(neutral_component(build_ut_elementary(ut(Z, (1, 1), (0, 1)))))) == 2
    a = build_ut_elementary(ut(Z, (2, 1), (0, 0, 0)))
    (s,) = center_of(a)
    assert {a.labels[k] for k in s.coeffs} == {"e11", "e22", "e33"}


def test_decompose_neutral_two_ideals():
    spec = ut(Z, (2, 1), (0, 1, 0))
    ideals = decompose_neutral(spec)
    assert len(ideals) == 2
    assert [i.labels for i in ideals] == [("e11", "e13", "e33"), ("e22",)]
    assert [i.shape for i in ideals] == [(1, 1), (1,)]
    # oracle: each span is closed, an ideal of A_e, and the two annihilate each other
    units = ut_units((2, 1))
    g = spec.elements
    neutral = [u for u in units if g[u[0]] == g[u[1]]]
    spans = [{units[k] for k in i.basis} for i in ideals]
    assert sum(map(len, spans)) == len(neutral)
    for s, t in itertools.product(range(2), repeat=2):
        for u in spans[s]:
            for v in neutral:
                for w in (unit_word([u, v]), unit_word([v, u])):
                    assert w is None or w in spans[s]
            if s != t:
                assert all(unit_word([u, v]) is None for v in spans[t])


def test_decompose_neutral_extremes():
    (one,) = decompose_neutral(ut(Z, (2, 1), (4, 4, 4)))
    assert one.shape == (2, 1) and len(one.basis) == 7
    parts = decompose_neutral(ut(Z, (1, 1, 1), (0, 1, 2)))
    assert len(parts) == 3 and all(len(p.basis) == 1 for p in parts)


def radical_oracle(blocks, k):
    units = ut_units(blocks)
    blk = [b for b, d in enumerate(blocks) for _ in range(d)]
    if k == 0:
        return set(units)
    j = [u for u in units if blk[u[0]] < blk[u[1]]]
    out = set()
    for word in itertools.product(j, repeat=k):
        w = unit_word(list(word))
        if w is not None:
            out.add(w)
    return out


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (1, 1, 1), (1, 2, 1)])
def test_radical_powers_match_products(blocks):
    spec = ut(Z, blocks, [0] * sum(blocks))
    units = ut_units(blocks)
    for k in range(len(blocks) + 1):
        assert {units[a] for a in radical_power(spec, k)} == radical_oracle(blocks, k)
    assert radical_power(spec, len(blocks)) == ()
    assert set(radical_power(spec, 2)) <= set(radical_power(spec, 1))


def test_radical_examples():
    labels = build_ut_elementary(ut(Z, (2, 1), (0, 0, 0))).labels
    assert [labels[a] for a in radical_power(ut(Z, (2, 1), (0, 0, 0)), 1)] == ["e13", "e23"]


def test_normalize_representatives():
    g = FgAbelianGroup(1, (2,))
    h = subgroup_generated(g, [g(0, 1)])
    spec = ut(g, (1, 1, 1), ((0, 0), (1, 0), (1, 1)))
    assert normalize_representatives(spec, h).elements == (g(0, 0), g(1, 0), g(1, 0))
    same = ut(g, (1, 1), ((0, 0), (0, 1)))
    assert normalize_representatives(same, h).elements == (g(0, 0), g(0, 0))
    fixed = ut(g, (1, 1), ((0, 0), (1, 0)))
    assert normalize_representatives(fixed, h) == fixed


def test_normalized_neutral_component_is_a_tensor_factor():
    g = FgAbelianGroup(1, (2, 2))
    b = DivisionFactor.pauli([2], g, images=[[0, 1, 0], [0, 0, 1]])
    spec = ut(g, (1, 1, 1), ((0, 0, 0), (1, 0, 0), (1, 1, 0)))
    norm = normalize_representatives(spec, b.support())
    r = tensor(build_ut_elementary(norm), b.algebra())
    a_e = neutral_component(build_ut_elementary(norm))
    # every neutral basis element of R' is (unit of A'_e) ⊗ 1
    for k in r.component(None):
        la, lb = r.labels[k].split("⊗")
        assert la in a_e.labels and lb == "X0Z0"
    assert len(r.component(None)) == a_e.dim


def brute_invariance(elements, group):
    from collections import Counter

    omega = Counter(elements)
    return {h for h in group.elements() if all(omega[h + x] == c for x, c in omega.items())}


@pytest.mark.parametrize(
    "group,coords",
    [
        (Z2SQ, [(0, 0), (1, 0)]),
        (Z2SQ, [(0, 0), (1, 0), (0, 1), (1, 1)]),
        (Z4, [(0,), (2,)]),
        (Z4, [(0,), (0,), (1,)]),
        (Z4, [(0,), (1,), (2,), (3,)]),
        (FgAbelianGroup(0, (2, 4)), [(0, 0), (1, 2), (0, 0), (1, 2)]),
    ],
)
def test_invariance_subgroup_brute_force(group, coords):
    elems = [group(c) for c in coords]
    omega, sub = omega_and_invariance(elems)
    assert sum(omega.values()) == len(elems)
    assert set(sub.elements()) == brute_invariance(elems, group)


def test_invariance_examples():
    omega, sub = omega_and_invariance([Z(0), Z(0), Z(5)])
    assert omega == {Z(0): 2, Z(5): 1} and sub.is_trivial
    _, sub = omega_and_invariance([Z(3)] * 4)
    assert sub.is_trivial
    z2 = FgAbelianGroup(0, (2,))
    _, sub = omega_and_invariance([z2(0), z2(1)])
    assert sub.order == 2
    subs = block_invariance_subgroups(ut(z2, (2, 1), (0, 1, 0)))
    assert [s.order for s in subs] == [2, 1]


def test_transport_grading_round_trip():
    z7 = FgAbelianGroup(0, (7,))
    phi = GroupHom.from_images(Z, z7, [[1]])
    s = [Z(0), Z(1), Z(3)]
    src = build_ut_elementary(ut(z7, (1, 1, 1), (4, 3, 0)))
    # supp = {0, 1, 3, 4}; 4 = 1 + 3 is outside phi(S), so lifting must refuse
    with pytest.raises(GradingError):
        transport_grading(src, phi, s)
    b = build_ut_elementary(ut(z7, (1, 1), (3, 0)))
    lifted = transport_grading(b, phi, s)
    assert lifted.group == Z and verify_grading(lifted) == []
    assert coarsen(lifted, phi).degrees == b.degrees
    assert lifted.degrees[1] == Z(3)


def test_transport_grading_needs_injectivity():
    z7 = FgAbelianGroup(0, (7,))
    phi = GroupHom.from_images(Z, z7, [[1]])
    triv = trivial_algebra(z7)
    assert transport_grading(triv, phi, [Z(0)]).support == [Z(0)]
    with pytest.raises(GradingError, match="not injective"):
        transport_grading(triv, phi, [Z(0), Z(7)])


def test_graded_algebra_validation():
    with pytest.raises(ValueError):
        GradedAlgebra(Z, ["a", "a"], [Z(0), Z(0)], {})
    with pytest.raises(ValueError):
        GradedAlgebra(Z, ["a"], [Z(0), Z(1)], {})
    bad = GradedAlgebra(Z, ["a", "b"], [Z(0), Z(1)], {(1, 1): [(1, 1)]})
    assert verify_grading(bad) == [(1, 1, 1)]


def test_direct_sum_and_elements():
    s = direct_sum(matrix_algebra(2), matrix_algebra(2))
    assert s.dim == 8 and verify_associativity(s) == []
    x = s.element({"e12@1": Fraction(1, 2), "e21@2": 3})
    assert (x * x).is_zero()
    assert s.one() * x == x
