import itertools
import random
from fractions import Fraction

import pytest
import sympy
from sympy.combinatorics import Permutation
from oracles import ut

from gradedpi import (
    FgAbelianGroup,
    GradedPolynomial,
    GradedVariable,
    InadmissibleSubstitution,
    UnsupportedError,
    build_ut_elementary,
    capelli,
    central_poly,
    evaluate,
    matrix_algebra,
    neutral_component,
)
from gradedpi.polynomials import commutator, sign_of, with_degree

Z = FgAbelianGroup(1)


def test_capelli_small_ranks():
    assert capelli(1).terms == {("y1", "x1", "y2"): 1}
    c2 = capelli(2)
    # Cap_2 = y1 x1 y2 x2 y3 - y1 x2 y2 x1 y3
    assert c2.terms == {("y1", "x1", "y2", "x2", "y3"): 1, ("y1", "x2", "y2", "x1", "y3"): -1}
    assert len(capelli(4).terms) == 24
    assert capelli(4).degree == 9


def test_sign_of_matches_sympy():
    for perm in itertools.permutations(range(5)):
        assert sign_of(perm) == Permutation(list(perm)).signature()


def test_with_degree_retypes_one_variable():
    g = Z(2)
    p = with_degree(capelli(2), "x2", g)
    assert p.var("x2").degree == g and p.var("x1").degree is None
    assert p.terms == capelli(2).terms
    assert with_degree(capelli(2), "x2", None) == capelli(2)
    with pytest.raises(KeyError):
        capelli(2).with_degree("x9", g)


def test_capelli_times_retyped_variable():
    g = Z(1)
    p = capelli(1) * GradedPolynomial.variable("x2", g)
    assert p.names == ("x1", "y1", "y2", "x2")
    assert p.terms == {("y1", "x1", "y2", "x2"): 1}


def test_evaluate_examples():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 0)))
    e11, e12, e22 = a.basis()
    assert evaluate(capelli(1), {"y1": e11, "x1": e12, "y2": e22}) == e12
    m = matrix_algebra(2)
    b = {lab: m.basis_element(lab) for lab in m.labels}
    one = m.one()
    # with all y = 1, Cap_2 is the commutator [x1, x2]
    assert evaluate(capelli(2), {"x1": b["e11"], "x2": b["e22"], "y1": one, "y2": one, "y3": one}).is_zero()
    v = evaluate(capelli(2), {"x1": b["e12"], "x2": b["e21"], "y1": one, "y2": one, "y3": one})
    assert v == b["e11"] - b["e22"]


def test_evaluate_rejects_inadmissible():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    e11, e12, e22 = a.basis()
    with pytest.raises(InadmissibleSubstitution) as err:
        evaluate(capelli(1), {"y1": e11, "x1": e12, "y2": e22})
    assert err.value.variable == "x1"
    with pytest.raises(InadmissibleSubstitution):
        evaluate(capelli(1), {"y1": e11, "x1": e11})


def test_capelli_vanishes_on_commutative_algebra():
    a = build_ut_elementary(ut(Z, (1, 1), (0, 1)))
    e = neutral_component(a)
    for sub in itertools.product(e.basis(), repeat=5):
        assert evaluate(capelli(2), dict(zip(("x1", "x2", "y1", "y2", "y3"), sub))).is_zero()


def random_element(alg, rng):
    return alg.element({i: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for i in range(alg.dim)})


def test_evaluate_is_multilinear_and_capelli_alternates():
    rng = random.Random(3)
    m = matrix_algebra(2)
    cap = capelli(2)
    names = cap.names
    for _ in range(20):
        sub = {n: random_element(m, rng) for n in names}
        slot = rng.choice(names)
        b, c = random_element(m, rng), random_element(m, rng)
        lam, mu = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4), 3)
        mixed = dict(sub, **{slot: lam * b + mu * c})
        lhs = evaluate(cap, mixed)
        rhs = lam * evaluate(cap, dict(sub, **{slot: b})) + mu * evaluate(cap, dict(sub, **{slot: c}))
        assert lhs == rhs
        swapped = dict(sub, x1=sub["x2"], x2=sub["x1"])
        assert evaluate(cap, swapped) == -evaluate(cap, sub)


def test_central_poly_two_is_full_linearization_of_commutator_square():
    a1, a2, b1, b2 = sympy.symbols("a1 a2 b1 b2", commutative=False)
    A, B = a1 + a2, b1 + b2
    expr = sympy.expand((A * B - B * A) ** 2)
    expected = {}
    for term in expr.args:
        coeff, nc = term.args_cnc()
        word = tuple(str(s) for s in nc)
        if sorted(word) == ["a1", "a2", "b1", "b2"]:
            expected[word] = int(sympy.Mul(*coeff)) if coeff else 1
    rename = {"z1": "a1", "z3": "a2", "z2": "b1", "z4": "b2"}
    got = {tuple(rename[x] for x in w): int(c.to_fraction()) for w, c in central_poly(2).terms.items()}
    assert got == expected


def test_central_poly_small_cases():
    assert central_poly(1).terms == {("z1",): 1}
    assert central_poly(2).degree == 4 and central_poly(2).is_multilinear()
    with pytest.raises(UnsupportedError):
        central_poly(3)


def test_alternating_classes():
    assert capelli(3).alternating_classes() == [("x1", "x2", "x3")]
    assert central_poly(2).alternating_classes() == []
    g = Z(1)
    retyped = capelli(3).with_degree("x3", g)
    assert retyped.alternating_classes() == [("x1", "x2")]


def test_construction_errors_and_arithmetic():
    x, y = GradedVariable("x"), GradedVariable("y")
    with pytest.raises(ValueError):
        GradedPolynomial([x, y], {("x",): 1})
    with pytest.raises(ValueError):
        GradedPolynomial([x, x], {})
    px = GradedPolynomial.variable("x")
    with pytest.raises(ValueError):
        px * px
    c = commutator(px, GradedPolynomial.variable("y"))
    assert c.terms == {("x", "y"): 1, ("y", "x"): -1}
    assert (c + c.swap("x", "y")).is_zero()
    assert str(c) == "x y - y x"
    assert c.rename({"x": "u"}).names == ("u", "y")
    assert (Fraction(1, 2) * c).terms[("x", "y")] == Fraction(1, 2)


def test_substitute_keeps_multilinearity():
    g = Z(1)
    outer = GradedPolynomial([GradedVariable("a", g), GradedVariable("b")], {("a", "b"): 1, ("b", "a"): -1})
    inner = GradedPolynomial.monomial(GradedVariable("u", g), GradedVariable("v"))
    s = outer.substitute("a", inner)
    assert s.is_multilinear() and s.names == ("u", "v", "b")
    assert s.terms == {("u", "v", "b"): 1, ("b", "u", "v"): -1}
    with pytest.raises(ValueError):
        outer.substitute("a", GradedPolynomial.variable("b"))
