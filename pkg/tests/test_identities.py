import itertools
import random

import pytest
from oracles import elementary_degree, oracle_is_identity, oracle_values, rank_of, ut, ut_units

from gradedpi import (
    DivisionFactor,
    FgAbelianGroup,
    GradedAlgebra,
    GradedPolynomial,
    GradedVariable,
    ResourceLimitError,
    StructuralAssumptionError,
    build_ut_elementary,
    capelli,
    capelli_rank,
    capelli_support_test,
    coarsen,
    identity_space,
    is_identity,
    matrix_algebra,
    neutral_component,
    recover_division_support,
    same_identities_upto,
    tensor,
)
from gradedpi import identities
from gradedpi.algebra import trivial_algebra
from gradedpi.identities import capelli_rank_witness, nonzero_values, signatures_upto

Z = FgAbelianGroup(1)
Z2SQ = FgAbelianGroup(0, (2, 2))


def label(u):
    return f"e{u[0] + 1}{u[1] + 1}"


def random_poly(rng, degrees, n):
    vs = [GradedVariable(f"v{i}", rng.choice(degrees)) for i in range(n)]
    words = list(itertools.permutations([v.name for v in vs]))
    terms = {w: rng.choice([-2, -1, 1, 1, 3]) for w in rng.sample(words, rng.randint(1, min(4, len(words))))}
    return GradedPolynomial(vs, terms)


SPECS = [
    ut(Z, (1, 1), (0, 1)),
    ut(Z, (2, 1), (0, 1, 0)),
    ut(Z, (1, 1, 1), (0, 1, 1)),
    ut(Z2SQ, (2, 1), ((0, 0), (1, 0), (1, 1))),
]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_is_identity_agrees_with_naive_enumeration(spec):
    rng = random.Random(hash(str(spec)) % 1000)
    alg = build_ut_elementary(spec)
    deg = elementary_degree(spec)
    degrees = sorted({deg(u) for u in ut_units(spec.block_sizes)}) + [spec.group.identity]
    for _ in range(40):
        p = random_poly(rng, degrees, rng.randint(1, 4))
        res = is_identity(p, alg)
        assert res.holds == oracle_is_identity(p, spec.block_sizes, deg, spec.group)
        if not res.holds:
            first = next(a for a, v in oracle_values(p, spec.block_sizes, deg, spec.group) if v)
            assert res.witness == {x: label(u) for x, u in first.items()}


def test_witness_value_and_counts():
    alg = build_ut_elementary(ut(Z, (1, 1), (0, 0)))
    res = is_identity(capelli(3), alg)
    assert not res.holds
    assert res.nonzero_substitutions > 0 and res.substitution_space == 3**7
    holds, witness = res
    assert witness == res.witness
    # the value agrees with a direct evaluation of the witness
    from gradedpi import evaluate

    sub = {x: alg.basis_element(lab) for x, lab in witness.items()}
    assert evaluate(capelli(3), sub) == res.value


def test_capelli_alternation_reduction_matches_oracle_values():
    spec = ut(Z, (1, 1), (0, 0))
    alg = build_ut_elementary(spec)
    deg = elementary_degree(spec)
    cap = capelli(3)
    units = ut_units((1, 1))
    expected = {}
    for a, v in oracle_values(cap, (1, 1), deg, spec.group):
        xs = [units.index(a[f"x{i}"]) for i in (1, 2, 3)]
        if v and xs == sorted(xs) and len(set(xs)) == 3:
            expected[tuple(units.index(a[x]) for x in cap.names)] = v
    got = {}
    for a, val in nonzero_values(cap, alg):
        got[tuple(a[x] for x in cap.names)] = {units[k]: c.to_fraction() for k, c in val.coeffs.items()}
    assert got == expected


def test_basic_examples():
    k2 = neutral_component(build_ut_elementary(ut(Z, (1, 1), (0, 1))))
    comm = GradedPolynomial([GradedVariable("x1"), GradedVariable("x2")], {("x1", "x2"): 1, ("x2", "x1"): -1})
    assert is_identity(comm, k2).holds
    flat = build_ut_elementary(ut(Z, (1, 1), (0, 0)))
    assert is_identity(capelli(4), flat).holds
    assert not is_identity(capelli(3), flat).holds


def test_vacuous_slots():
    alg = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    p = GradedPolynomial.variable("x", Z(5))
    res = is_identity(p, alg)
    assert res.holds and res.vacuous
    sp = identity_space([Z(5)], alg)
    assert sp.vacuous and sp.dimension == 1


@pytest.mark.parametrize(
    "alg,expected",
    [
        (trivial_algebra(), 2),
        (neutral_component(build_ut_elementary(ut(Z, (1, 1), (0, 1)))), 2),
        (build_ut_elementary(ut(Z, (1, 1), (0, 1))), 4),
        (matrix_algebra(2), 5),
        (build_ut_elementary(ut(Z, (1, 1, 1), (0, 0, 0))), 6),
    ],
    ids=["K", "KxK", "UT(1,1)", "M2", "UT(1,1,1)"],
)
def test_capelli_ranks(alg, expected):
    assert capelli_rank(alg) == expected


def test_capelli_rank_witness_is_lowest_nonidentity():
    t, w = capelli_rank_witness(matrix_algebra(2))
    assert t == 5 and not w.holds
    assert w.witness == {
        "x1": "e11", "x2": "e12", "x3": "e21", "x4": "e22",
        "y1": "e11", "y2": "e11", "y3": "e22", "y4": "e12", "y5": "e21",
    }


def evaluation_rank_oracle(signature, spec):
    """Rank of the evaluation map on multilinear words, built from the naive oracle."""
    n = len(signature)
    deg = elementary_degree(spec)
    words = list(itertools.permutations(range(n)))
    vs = [GradedVariable(f"x{i + 1}", g) for i, g in enumerate(signature)]
    cols = []
    for w in words:
        p = GradedPolynomial(vs, {tuple(vs[i].name for i in w): 1})
        cols.append({tuple(sorted(a.items())): v for a, v in oracle_values(p, spec.block_sizes, deg, spec.group)})
    keys = sorted({(a, out) for col in cols for a, val in col.items() for out in val})
    rows = [[col.get(a, {}).get(out, 0) for col in cols] for a, out in keys]
    return len(words), rank_of(rows) if rows else 0


@pytest.mark.parametrize(
    "spec,signature",
    [
        (ut(Z, (1, 1), (0, 1)), (0, 0)),
        (ut(Z, (1, 1), (0, 1)), (0, 0, 0)),
        (ut(Z, (1, 1), (0, 1)), (0, 0, -1)),
        (ut(Z, (2,), (0, 0)), (0, 0)),
        (ut(Z, (2,), (0, 0)), (0, 0, 0)),
        (ut(Z, (2, 1), (0, 1, 0)), (1, -1, 0)),
        (ut(Z, (2, 1), (0, 1, 0)), (0, -1, 1)),
    ],
    ids=str,
)
def test_identity_space_dimension_matches_oracle_rank(spec, signature):
    sig = [Z(g) for g in signature]
    sp = identity_space(sig, build_ut_elementary(spec))
    total, rank = evaluation_rank_oracle(sig, spec)
    assert sp.total == total
    assert sp.dimension == total - rank
    alg = build_ut_elementary(spec)
    for p in sp.polynomials():
        assert is_identity(p, alg).holds


def test_identity_space_examples():
    k = trivial_algebra(Z)
    (p,) = identity_space([Z(0), Z(0)], k).polynomials()
    assert p.terms == {("x1", "x2"): 1, ("x2", "x1"): -1}
    assert identity_space([Z(0), Z(0)], matrix_algebra(2, Z)).dimension == 0
    kk = neutral_component(build_ut_elementary(ut(Z, (1, 1), (0, 1))))
    assert identity_space([Z(0)] * 3, kk).dimension == 5
    with pytest.raises(ResourceLimitError):
        identity_space([Z(0)] * 4, k, max_degree=3)


def test_same_identities_examples():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    assert same_identities_upto(a, a, 3).equal
    shifted = build_ut_elementary(ut(Z, (1, 1), (4, 5)))
    assert same_identities_upto(a, shifted, 3).equal
    cmp = same_identities_upto(matrix_algebra(2, Z), trivial_algebra(Z), 3)
    assert not cmp and cmp.signature == (Z(0), Z(0))
    assert cmp.to_json()["kernel_dimensions"] == [0, 1]
    with pytest.raises(ValueError):
        same_identities_upto(a, matrix_algebra(2), 2)


def test_signatures_are_multisets():
    sigs = list(signatures_upto([Z(1), Z(0)], 2))
    assert sigs == [(Z(0),), (Z(1),), (Z(0), Z(0)), (Z(0), Z(1)), (Z(1), Z(1))]


def test_identity_checks_invariant_under_renaming_and_swaps():
    alg = build_ut_elementary(ut(Z, (2, 1), (0, 1, 0)))
    rng = random.Random(11)
    for _ in range(20):
        p = random_poly(rng, [Z(0), Z(1), Z(-1)], 3)
        base = is_identity(p, alg).holds
        assert is_identity(p.rename({"v0": "w0", "v1": "w1"}), alg).holds == base
        same = [(a, b) for a, b in itertools.combinations(p.names, 2) if p.var(a).degree == p.var(b).degree]
        for a, b in same:
            assert is_identity(p.swap(a, b), alg).holds == base


def test_work_limit_refuses(monkeypatch):
    monkeypatch.setenv(identities.WORK_LIMIT_ENV, "50")
    with pytest.raises(ResourceLimitError, match="GRADEDPI_MAX_WORK"):
        is_identity(capelli(4), matrix_algebra(2))


def test_parallel_scan_matches_sequential(monkeypatch):
    alg = build_ut_elementary(ut(Z, (2, 1), (0, 1, 0)))
    seq = is_identity(capelli(3), coarsen(alg, identities.GroupHom.trivial(Z)))
    sp_seq = identity_space([Z(0), Z(1), Z(-1)], alg)
    monkeypatch.setattr(identities, "PARALLEL_THRESHOLD", 0)
    par = is_identity(capelli(3), coarsen(alg, identities.GroupHom.trivial(Z)), workers=2)
    assert par.to_json() == seq.to_json()
    assert identity_space([Z(0), Z(1), Z(-1)], alg, workers=2).key() == sp_seq.key()


def pauli_model():
    g = FgAbelianGroup(1, (2, 2))
    b = DivisionFactor.pauli([2], g, images=[[0, 1, 0], [0, 0, 1]])
    spec = ut(g, (1, 1), ((0, 0, 0), (1, 0, 0)))
    return g, b, tensor(build_ut_elementary(spec), b.algebra())


def test_support_test_on_tensor_model():
    g, b, r = pauli_model()
    for h in b.support().elements():
        assert capelli_support_test(r, h, 2)
    assert capelli_support_test(r, g.identity)
    assert not capelli_support_test(r, g(7, 0, 0), 2)
    outside = [x for x in r.support if x not in b.support()]
    assert outside and not any(capelli_support_test(r, x, 2) for x in outside)


def test_recover_support():
    _, b, r = pauli_model()
    assert recover_division_support(r) == b.support()
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    assert recover_division_support(a).is_trivial


def test_out_of_model_support():
    # K[x]/(x^2) graded by Z with deg x = 1: the recovered set {0, 1} is not a subgroup
    dual = GradedAlgebra(Z, ["1", "x"], [Z(0), Z(1)], {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)]}, unity={0: 1})
    with pytest.raises(StructuralAssumptionError):
        recover_division_support(dual)


def test_non_multilinear_rejected():
    class Fake(GradedPolynomial):
        def is_multilinear(self):
            return False

    with pytest.raises(ValueError):
        is_identity(Fake([GradedVariable("x")], {("x",): 1}), trivial_algebra())
