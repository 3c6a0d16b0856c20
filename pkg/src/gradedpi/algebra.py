"""Finite-dimensional group-graded algebras given by structure constants.

Every algebra has a homogeneous basis: basis element ``i`` has degree
``degrees[i]`` and ``b_i * b_j = sum(c * b_k for k, c in table[i, j])``.
All constructors in the package produce products with at most one term,
but nothing here relies on that.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .cyclotomic import ONE, ZERO, CycScalar, as_scalar
from .groups import FgAbelianGroup, GroupElement, GroupError, GroupHom
from .linalg import RowSpace

__all__ = [
    "GradedAlgebra",
    "AlgebraElement",
    "GradingError",
    "verify_grading",
    "verify_associativity",
    "tensor",
    "coarsen",
    "direct_sum",
    "neutral_component",
    "subalgebra",
    "center_of",
    "trivial_algebra",
    "matrix_algebra",
    "transport_grading",
    "is_division_grading",
]


class GradingError(ValueError):
    """A grading axiom or a grading-transport precondition fails."""


Table = Mapping[tuple[int, int], Sequence[tuple[int, CycScalar]]]


class GradedAlgebra:
    def __init__(
        self,
        group: FgAbelianGroup,
        labels: Sequence[str],
        degrees: Sequence[GroupElement],
        table: Table,
        unity: Mapping[int, CycScalar] | None = None,
        name: str | None = None,
    ):
        if len(labels) != len(degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")
        for g in degrees:
            if g.group != group:
                raise GroupError(f"degree {g} is not in {group}")
        self.group = group
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        self.name = name
        n = len(labels)
        mul: list[list[tuple[tuple[int, CycScalar], ...]]] = [[()] * n for _ in range(n)]
        clean = {}
        for (i, j), terms in table.items():
            acc: dict[int, CycScalar] = {}
            for k, c in terms:
                c = as_scalar(c)
                acc[k] = acc[k] + c if k in acc else c
            out = tuple((k, c) for k, c in sorted(acc.items()) if not c.is_zero())
            if out:
                mul[i][j] = out
                clean[i, j] = out
        self._mul = mul
        self.table = clean
        self.unity = None if unity is None else {k: as_scalar(c) for k, c in unity.items() if as_scalar(c)}
        comps: dict[GroupElement, list[int]] = {}
        for i, g in enumerate(self.degrees):
            comps.setdefault(g, []).append(i)
        self.components = {g: tuple(v) for g, v in comps.items()}
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.dim

    @property
    def support(self) -> list[GroupElement]:
        return sorted(self.components)

    def component(self, g: GroupElement | None) -> tuple[int, ...]:
        """Basis indices of the homogeneous component of degree g (None = identity)."""
        if g is None:
            g = self.group.identity
        if g.group != self.group:
            raise GroupError(f"{g} is not in the grading group {self.group}")
        return self.components.get(g, ())

    def index(self, label: str) -> int:
        return self._index[label]

    def basis_element(self, i: int | str) -> "AlgebraElement":
        if isinstance(i, str):
            i = self._index[i]
        return AlgebraElement(self, {i: ONE})

    def basis(self) -> list["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coeffs: Mapping[int | str, object]) -> "AlgebraElement":
        out = {}
        for k, c in coeffs.items():
            i = self._index[k] if isinstance(k, str) else k
            out[i] = as_scalar(c)
        return AlgebraElement(self, out)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        if self.unity is None:
            raise ValueError("algebra has no recorded unit")
        return AlgebraElement(self, dict(self.unity))

    def mul_basis(self, i: int, j: int) -> tuple[tuple[int, CycScalar], ...]:
        return self._mul[i][j]

    def same_structure(self, other: "GradedAlgebra") -> bool:
        return (
            self.group == other.group
            and self.labels == other.labels
            and self.degrees == other.degrees
            and self.table == other.table
        )

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<GradedAlgebra{tag} dim={self.dim} over {self.group}>"


class AlgebraElement:
    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: GradedAlgebra, coeffs: Mapping[int, CycScalar]):
        self.parent = parent
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.parent is not self.parent:
            raise ValueError("elements of different algebras")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return AlgebraElement(self.parent, out)

    def __neg__(self):
        return AlgebraElement(self.parent, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            out: dict[int, CycScalar] = {}
            mul = self.parent._mul
            for i, a in self.coeffs.items():
                row = mul[i]
                for j, b in other.coeffs.items():
                    ab = a * b
                    for k, c in row[j]:
                        v = ab * c
                        out[k] = out[k] + v if k in out else v
            return AlgebraElement(self.parent, out)
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.parent, {k: c * s for k, c in self.coeffs.items()})

    def __rmul__(self, other):
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.parent, {k: s * c for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement) or other.parent is not self.parent:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> GroupElement | None:
        """Degree of a nonzero homogeneous element; None if zero or not homogeneous."""
        degs = {self.parent.degrees[k] for k in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous_of(self, g: GroupElement) -> bool:
        return all(self.parent.degrees[k] == g for k in self.coeffs)

    def support_indices(self) -> set[int]:
        return set(self.coeffs)

    def commutes_with(self, other: "AlgebraElement") -> bool:
        return self * other == other * self

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.parent.labels
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            parts.append(labels[k] if c.is_one() else f"({c})*{labels[k]}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {self.parent.labels[k]: self.coeffs[k].to_json() for k in sorted(self.coeffs)}


# -- verification ----------------------------------------------------------


def verify_grading(alg: GradedAlgebra) -> list[tuple[int, int, int]]:
    """Return every (i, j, k) where b_i b_j has a b_k term of the wrong degree."""
    bad = []
    for (i, j), terms in sorted(alg.table.items()):
        target = alg.degrees[i] + alg.degrees[j]
        for k, _ in terms:
            if alg.degrees[k] != target:
                bad.append((i, j, k))
    return bad


def verify_associativity(alg: GradedAlgebra) -> list[tuple[int, int, int]]:
    """Return every basis triple on which (ab)c != a(bc)."""
    bad = []
    basis = alg.basis()
    for a, b, c in itertools.product(range(alg.dim), repeat=3):
        if not alg._mul[a][b] and not alg._mul[b][c]:
            continue
        if (basis[a] * basis[b]) * basis[c] != basis[a] * (basis[b] * basis[c]):
            bad.append((a, b, c))
    return bad


# -- constructors ----------------------------------------------------------


def trivial_algebra(group: FgAbelianGroup | None = None) -> GradedAlgebra:
    """The ground field, concentrated in degree e."""
    group = group or FgAbelianGroup()
    return GradedAlgebra(group, ["1"], [group.identity], {(0, 0): [(0, ONE)]}, unity={0: ONE}, name="K")


def matrix_algebra(n: int, group: FgAbelianGroup | None = None) -> GradedAlgebra:
    """M_n with the trivial grading; basis e_ij row-major."""
    group = group or FgAbelianGroup()
    labels = [_unit_label(i, j, n) for i in range(n) for j in range(n)]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    table = {}
    for (i, j), a in idx.items():
        for l in range(n):
            table[a, idx[j, l]] = [(idx[i, l], ONE)]
    return GradedAlgebra(
        group, labels, [group.identity] * len(labels), table, unity={idx[i, i]: ONE for i in range(n)}, name=f"M{n}"
    )


def _unit_label(i: int, j: int, n: int) -> str:
    return f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1},{j + 1}"


def _embed_trivial(alg: GradedAlgebra, group: FgAbelianGroup) -> GradedAlgebra:
    return GradedAlgebra(group, alg.labels, [group.identity] * alg.dim, alg.table, alg.unity, alg.name)


def _common_group(a: GradedAlgebra, b: GradedAlgebra) -> tuple[GradedAlgebra, GradedAlgebra]:
    if a.group == b.group:
        return a, b
    # the trivial group embeds into everything
    if a.group.rank == 0:
        return _embed_trivial(a, b.group), b
    if b.group.rank == 0:
        return a, _embed_trivial(b, a.group)
    raise GroupError(f"grading groups differ: {a.group} vs {b.group}; coarsen one along an embedding first")


def tensor(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """Kronecker product; basis pairs ordered lexicographically, degrees add."""
    a, b = _common_group(a, b)
    nb = b.dim
    labels = [f"{la}⊗{lb}" for la in a.labels for lb in b.labels]
    degrees = [ga + gb for ga in a.degrees for gb in b.degrees]
    table = {}
    for (i, j), ta in a.table.items():
        for (k, l), tb in b.table.items():
            table[i * nb + k, j * nb + l] = [(p * nb + q, c * d) for p, c in ta for q, d in tb]
    unity = None
    if a.unity is not None and b.unity is not None:
        unity = {i * nb + k: c * d for i, c in a.unity.items() for k, d in b.unity.items()}
    name = f"{a.name}⊗{b.name}" if a.name and b.name else None
    return GradedAlgebra(a.group, labels, degrees, table, unity, name)


def direct_sum(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    a, b = _common_group(a, b)
    off = a.dim
    labels = [f"{lab}@1" for lab in a.labels] + [f"{lab}@2" for lab in b.labels]
    table = dict(a.table)
    for (i, j), t in b.table.items():
        table[i + off, j + off] = [(k + off, c) for k, c in t]
    unity = None
    if a.unity is not None and b.unity is not None:
        unity = dict(a.unity)
        unity.update({k + off: c for k, c in b.unity.items()})
    name = f"{a.name}⊕{b.name}" if a.name and b.name else None
    return GradedAlgebra(a.group, labels, list(a.degrees) + list(b.degrees), table, unity, name)


def coarsen(alg: GradedAlgebra, hom: GroupHom) -> GradedAlgebra:
    """Regrade along ``hom``: same basis and products, degrees pushed forward."""
    if hom.source != alg.group:
        raise GroupError(f"homomorphism source {hom.source} is not the grading group {alg.group}")
    return GradedAlgebra(hom.target, alg.labels, [hom(g) for g in alg.degrees], alg.table, alg.unity, alg.name)


def subalgebra(alg: GradedAlgebra, indices: Iterable[int], name: str | None = None) -> GradedAlgebra:
    """Span of a set of basis elements, which must be closed under products."""
    idx = sorted(set(indices))
    pos = {i: p for p, i in enumerate(idx)}
    table = {}
    for i in idx:
        for j in idx:
            terms = alg._mul[i][j]
            if not terms:
                continue
            missing = [k for k, _ in terms if k not in pos]
            if missing:
                raise ValueError(
                    f"span is not closed: {alg.labels[i]}*{alg.labels[j]} involves {alg.labels[missing[0]]}"
                )
            table[pos[i], pos[j]] = [(pos[k], c) for k, c in terms]
    unity = None
    if alg.unity is not None and all(k in pos for k in alg.unity):
        unity = {pos[k]: c for k, c in alg.unity.items()}
    return GradedAlgebra(alg.group, [alg.labels[i] for i in idx], [alg.degrees[i] for i in idx], table, unity, name)


def neutral_component(alg: GradedAlgebra) -> GradedAlgebra:
    """A_e with the induced basis, still graded by the same group."""
    return subalgebra(alg, alg.component(None), name=f"{alg.name}_e" if alg.name else None)


def center_of(alg: GradedAlgebra) -> list[AlgebraElement]:
    """Basis (reduced echelon form) of the center, by an exact kernel computation."""
    n = alg.dim
    space = RowSpace(n)
    mul = alg._mul
    # for each basis b_j and output coordinate k: sum_i x_i ([b_i, b_j])_k = 0
    for j in range(n):
        rows: dict[int, dict[int, CycScalar]] = {}
        for i in range(n):
            for k, c in mul[i][j]:
                rows.setdefault(k, {})
                rows[k][i] = rows[k].get(i, ZERO) + c
            for k, c in mul[j][i]:
                rows.setdefault(k, {})
                rows[k][i] = rows[k].get(i, ZERO) - c
        for k in sorted(rows):
            row = {i: v for i, v in rows[k].items() if not v.is_zero()}
            if row:
                space.add(row)
    return [AlgebraElement(alg, v) for v in space.nullspace()]


def left_multiplication_inverse(x: AlgebraElement) -> AlgebraElement | None:
    """Two-sided inverse of x, or None; requires a recorded unit."""
    alg = x.parent
    one = alg.one()
    n = alg.dim
    # unknown y: (x*y)_k = sum_j y_j (x*b_j)_k must equal one_k
    cols = [(x * alg.basis_element(j)).coeffs for j in range(n)]
    space = RowSpace(n + 1)
    for k in range(n):
        row = {j: cols[j][k] for j in range(n) if k in cols[j]}
        if k in one.coeffs:
            row[n] = -one.coeffs[k]
        if row:
            space.add(row)
    if n in space.pivots:
        return None
    y = {}
    for pcol, prow in space.pivots.items():
        v = prow.get(n)
        if v is not None:
            y[pcol] = -v
    inv = AlgebraElement(alg, y)
    return inv if inv * x == one else None


def is_division_grading(alg: GradedAlgebra) -> bool:
    """Unit present, components at most one-dimensional, homogeneous basis invertible.

    With one-dimensional components every nonzero homogeneous element is a
    scalar multiple of a basis element, so checking the basis is exhaustive.
    """
    if alg.unity is None:
        return False
    if any(len(c) > 1 for c in alg.components.values()):
        return False
    return all(left_multiplication_inverse(b) is not None for b in alg.basis())


def transport_grading(
    alg: GradedAlgebra, hom: GroupHom, subset: Iterable[GroupElement]
) -> GradedAlgebra:
    """Lift an H-grading to a G-grading along ``hom``: G -> H.

    Basis element of H-degree phi(s) gets G-degree s.  Requires phi to be
    injective on S ∪ (S+S) and supp ⊆ phi(S); the lifted grading axiom is
    checked on every product.
    """
    if hom.target != alg.group:
        raise GroupError("homomorphism target is not the grading group")
    s = list(dict.fromkeys(subset))
    t = list(dict.fromkeys(s + [a + b for a in s for b in s]))
    seen: dict[GroupElement, GroupElement] = {}
    for x in t:
        y = hom(x)
        if y in seen and seen[y] != x:
            raise GradingError(f"homomorphism is not injective on S ∪ S·S: {seen[y]} and {x} both map to {y}")
        seen[y] = x
    lift = {hom(x): x for x in s}
    degrees = []
    for lab, h in zip(alg.labels, alg.degrees):
        if h not in lift:
            raise GradingError(f"basis element {lab} has degree {h} outside phi(S)")
        degrees.append(lift[h])
    out = GradedAlgebra(hom.source, alg.labels, degrees, alg.table, alg.unity, alg.name)
    bad = verify_grading(out)
    if bad:
        i, j, k = bad[0]
        raise GradingError(f"lifted grading fails on {alg.labels[i]}*{alg.labels[j]} -> {alg.labels[k]}")
    return out
