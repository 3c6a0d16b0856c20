"""Multilinear elements of the free graded algebra K<X_G>.

A polynomial declares an ordered tuple of graded variables and a map from
words (tuples of variable names, each variable exactly once) to nonzero
coefficients.  A variable of degree ``None`` stands for the neutral degree
of whatever group the polynomial is evaluated in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import AlgebraElement, GradedAlgebra
from .cyclotomic import ONE, CycScalar, as_scalar
from .groups import GroupElement

__all__ = [
    "GradedVariable",
    "GradedPolynomial",
    "InadmissibleSubstitution",
    "UnsupportedError",
    "capelli",
    "central_poly",
    "with_degree",
    "evaluate",
    "commutator",
    "sign_of",
]


class InadmissibleSubstitution(ValueError):
    def __init__(self, variable: str, message: str):
        super().__init__(f"{variable}: {message}")
        self.variable = variable


class UnsupportedError(NotImplementedError):
    pass


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: GroupElement | None = None

    def resolved(self, group) -> GroupElement:
        return group.identity if self.degree is None else self.degree

    def __str__(self):
        return self.name if self.degree is None else f"{self.name}^{self.degree}"


Word = tuple[str, ...]


class GradedPolynomial:
    __slots__ = ("variables", "terms", "_vars")

    def __init__(self, variables: Sequence[GradedVariable], terms: Mapping[Word, object]):
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.variables = variables
        self._vars = {v.name: v for v in variables}
        nameset = set(names)
        clean: dict[Word, CycScalar] = {}
        for word, c in terms.items():
            word = tuple(word)
            c = as_scalar(c)
            if c is NotImplemented:
                raise TypeError(f"bad coefficient {c!r}")
            if len(word) != len(names) or set(word) != nameset:
                raise ValueError(f"term {' '.join(word)} is not multilinear in {', '.join(names)}")
            clean[word] = clean[word] + c if word in clean else c
        self.terms = {w: c for w, c in clean.items() if not c.is_zero()}

    # -- construction ------------------------------------------------------

    @classmethod
    def variable(cls, name: str, degree: GroupElement | None = None) -> "GradedPolynomial":
        return cls([GradedVariable(name, degree)], {(name,): ONE})

    @classmethod
    def monomial(cls, *variables: GradedVariable, coeff=1) -> "GradedPolynomial":
        return cls(variables, {tuple(v.name for v in variables): coeff})

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def var(self, name: str) -> GradedVariable:
        return self._vars[name]

    @property
    def degree(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_multilinear(self) -> bool:
        names = set(self.names)
        return all(len(w) == len(names) and set(w) == names for w in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "GradedPolynomial"):
        if set(self._vars.values()) != set(other._vars.values()):
            raise ValueError("polynomials must share the same graded variables")

    def __add__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        self._aligned(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return GradedPolynomial(self.variables, terms)

    def __neg__(self):
        return GradedPolynomial(self.variables, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedPolynomial):
            clash = set(self.names) & set(other.names)
            if clash:
                raise ValueError(f"product of polynomials sharing variables {sorted(clash)}")
            terms = {a + b: c * d for a, c in self.terms.items() for b, d in other.terms.items()}
            return GradedPolynomial(self.variables + other.variables, terms)
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return GradedPolynomial(self.variables, {w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return GradedPolynomial(self.variables, {w: s * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return set(self.variables) == set(other.variables) and self.terms == other.terms

    def __hash__(self):
        return hash((frozenset(self.variables), frozenset(self.terms.items())))

    # -- variable manipulation --------------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "GradedPolynomial":
        variables = [GradedVariable(mapping.get(v.name, v.name), v.degree) for v in self.variables]
        terms = {tuple(mapping.get(x, x) for x in w): c for w, c in self.terms.items()}
        return GradedPolynomial(variables, terms)

    def with_degree(self, name: str, degree: GroupElement | None) -> "GradedPolynomial":
        if name not in self._vars:
            raise KeyError(f"unknown variable {name}")
        variables = [GradedVariable(v.name, degree) if v.name == name else v for v in self.variables]
        return GradedPolynomial(variables, self.terms)

    def swap(self, a: str, b: str) -> "GradedPolynomial":
        """Exchange the positions of two variables in every word (degrees stay with the names)."""
        tr = {a: b, b: a}
        return GradedPolynomial(self.variables, {tuple(tr.get(x, x) for x in w): c for w, c in self.terms.items()})

    def substitute(self, name: str, poly: "GradedPolynomial") -> "GradedPolynomial":
        """Replace variable ``name`` by a polynomial on disjoint variables."""
        if name not in self._vars:
            raise KeyError(f"unknown variable {name}")
        clash = (set(self.names) - {name}) & set(poly.names)
        if clash:
            raise ValueError(f"substitution would reuse variables {sorted(clash)}")
        variables = []
        for v in self.variables:
            variables.extend(poly.variables if v.name == name else [v])
        terms: dict[Word, CycScalar] = {}
        for w, c in self.terms.items():
            k = w.index(name)
            for pw, pc in poly.terms.items():
                nw = w[:k] + pw + w[k + 1 :]
                v = c * pc
                terms[nw] = terms[nw] + v if nw in terms else v
        return GradedPolynomial(variables, terms)

    def alternating_classes(self) -> list[tuple[str, ...]]:
        """Maximal sets of equal-degree variables in which the polynomial is alternating.

        Found from transpositions: f is alternating in {a, b} when swapping them
        negates f.  Alternation under (a b) and (b c) gives (a c), so classes are
        connected components of the transposition graph.
        """
        names = self.names
        neg = {w: -c for w, c in self.terms.items()}
        parent = {n: n for n in names}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in itertools.combinations(names, 2):
            if self._vars[a].degree != self._vars[b].degree or find(a) == find(b):
                continue
            tr = {a: b, b: a}
            swapped = {tuple(tr.get(x, x) for x in w): c for w, c in self.terms.items()}
            if swapped == neg:
                parent[find(b)] = find(a)
        classes: dict[str, list[str]] = {}
        for n in names:
            classes.setdefault(find(n), []).append(n)
        return [tuple(c) for c in classes.values() if len(c) > 1]

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        deg = {v.name: v for v in self.variables}
        parts = []
        for w, c in self.terms.items():
            mono = " ".join(str(deg[x]) for x in w)
            if c.is_one():
                parts.append(f"+ {mono}")
            elif c == -1:
                parts.append(f"- {mono}")
            elif c.is_rational() and c.to_fraction() < 0:
                parts.append(f"- {-c.to_fraction()} {mono}")
            elif c.is_rational():
                parts.append(f"+ {c} {mono}")
            else:
                parts.append(f"+ ({c}) {mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"GradedPolynomial({self})"


def sign_of(perm: Sequence[int]) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def capelli(t: int, x: str = "x", y: str = "y") -> GradedPolynomial:
    """Cap_t(x_1..x_t; y_1..y_{t+1}) = sum_sigma sgn(sigma) y_1 x_s(1) y_2 ... x_s(t) y_{t+1}."""
    if t < 0:
        raise ValueError("rank must be non-negative")
    xs = [GradedVariable(f"{x}{i}") for i in range(1, t + 1)]
    ys = [GradedVariable(f"{y}{i}") for i in range(1, t + 2)]
    terms = {}
    for perm in itertools.permutations(range(t)):
        word = [ys[0].name]
        for k, p in enumerate(perm):
            word += [xs[p].name, ys[k + 1].name]
        terms[tuple(word)] = sign_of(perm)
    return GradedPolynomial(xs + ys, terms)


def commutator(a: GradedPolynomial, b: GradedPolynomial) -> GradedPolynomial:
    return a * b - b * a


def _commutator_product_sum(pairs, names) -> GradedPolynomial:
    # sum over pairs of [a,b][c,d] with a..d variable names
    variables = [GradedVariable(n) for n in names]
    terms: dict[Word, int] = {}
    for (a, b), (c, d) in pairs:
        for w1, s1 in (((a, b), 1), ((b, a), -1)):
            for w2, s2 in (((c, d), 1), ((d, c), -1)):
                w = w1 + w2
                terms[w] = terms.get(w, 0) + s1 * s2
    return GradedPolynomial(variables, terms)


def central_poly(k: int, prefix: str = "z") -> GradedPolynomial:
    """Multilinear central polynomial for M_k that vanishes on every M_l, l < k.

    k = 1: z1.  k = 2: full linearization of [a, b]^2 (a -> z1, z3 and
    b -> z2, z4).  Larger k is not provided.
    """
    if k == 1:
        return GradedPolynomial.variable(f"{prefix}1")
    if k == 2:
        z1, z2, z3, z4 = (f"{prefix}{i}" for i in range(1, 5))
        pairs = [
            ((z1, z2), (z3, z4)),
            ((z3, z4), (z1, z2)),
            ((z1, z4), (z3, z2)),
            ((z3, z2), (z1, z4)),
        ]
        return _commutator_product_sum(pairs, [z1, z2, z3, z4])
    raise UnsupportedError(f"central polynomial for M_{k} is outside the verified range k <= 2")


def with_degree(poly: GradedPolynomial, name: str, degree: GroupElement | None) -> GradedPolynomial:
    return poly.with_degree(name, degree)


def evaluate(
    poly: GradedPolynomial, substitution: Mapping[str, AlgebraElement], algebra: GradedAlgebra | None = None
) -> AlgebraElement:
    """Value of ``poly`` at an admissible substitution, summed in term order."""
    if algebra is None:
        if not substitution:
            raise ValueError("cannot infer the algebra from an empty substitution")
        algebra = next(iter(substitution.values())).parent
    group = algebra.group
    for v in poly.variables:
        if v.name not in substitution:
            raise InadmissibleSubstitution(v.name, "no value supplied")
        a = substitution[v.name]
        if a.parent is not algebra:
            raise InadmissibleSubstitution(v.name, "value lives in another algebra")
        g = v.resolved(group)
        if not a.is_homogeneous_of(g):
            raise InadmissibleSubstitution(v.name, f"value {a} is not homogeneous of degree {g}")
    total = algebra.zero()
    for w, c in poly.terms.items():
        prod = substitution[w[0]]
        for x in w[1:]:
            if prod.is_zero():
                break
            prod = prod * substitution[x]
        total = total + prod * c
    return total
