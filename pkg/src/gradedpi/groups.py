"""Finitely generated abelian groups Z^p x Z/n_1 x ... x Z/n_q.

Groups are written additively.  Elements carry integer coordinate tuples:
``free_rank`` unbounded coordinates followed by one coordinate per torsion
modulus, each reduced to its least non-negative residue.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import hermite_rows, reduce_mod_hermite, smith_decomposition

__all__ = [
    "FgAbelianGroup",
    "GroupElement",
    "GroupHom",
    "Subgroup",
    "GroupError",
    "compose",
    "subgroup_generated",
    "quotient",
    "finite_reduction",
]


class GroupError(ValueError):
    """Raised on parent mismatches and ill-defined homomorphisms."""


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int = 0
    torsion_moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_moduli", tuple(int(n) for n in self.torsion_moduli))
        if self.free_rank < 0:
            raise GroupError("free rank must be non-negative")
        if any(n < 2 for n in self.torsion_moduli):
            raise GroupError(f"torsion moduli must be >= 2, got {self.torsion_moduli}")

    @property
    def rank(self) -> int:
        """Number of coordinates."""
        return self.free_rank + len(self.torsion_moduli)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion_moduli) if self.is_finite else None

    def relation_rows(self) -> list[list[int]]:
        r = self.rank
        rows = []
        for i, n in enumerate(self.torsion_moduli):
            row = [0] * r
            row[self.free_rank + i] = n
            rows.append(row)
        return rows

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise GroupError(f"{self} expects {self.rank} coordinates, got {len(coords)}")
        p = self.free_rank
        return tuple(int(c) for c in coords[:p]) + tuple(
            int(c) % n for c, n in zip(coords[p:], self.torsion_moduli)
        )

    def __call__(self, *coords) -> "GroupElement":
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = coords[0]
        return GroupElement(self, self.reduce(coords))

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        return [
            GroupElement(self, tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)
        ]

    def elements(self) -> list["GroupElement"]:
        """All elements in lexicographic coordinate order (finite groups only)."""
        if not self.is_finite:
            raise GroupError("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in itertools.product(*(range(n) for n in self.torsion_moduli))]

    def element_order(self, x: "GroupElement") -> int | None:
        if any(x.coords[: self.free_rank]):
            return None
        return math.lcm(1, *(n // math.gcd(c, n) for c, n in zip(x.coords[self.free_rank :], self.torsion_moduli)))

    def product(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        """Direct product; coordinates are (free of self, free of other, torsion of self, torsion of other)."""
        return FgAbelianGroup(self.free_rank + other.free_rank, self.torsion_moduli + other.torsion_moduli)

    def normal_form(self) -> tuple["FgAbelianGroup", "GroupHom"]:
        """Invariant-factor form and an isomorphism onto it."""
        return quotient(self, subgroup_generated(self, []))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{n}" for n in self.torsion_moduli)
        return " x ".join(parts) if parts else "1"

    def literal(self) -> str:
        return f"group {self}"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise GroupError(f"parent mismatch: {self.group} vs {other.group}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupElement(self.group, self.group.reduce([a + b for a, b in zip(self.coords, other.coords)]))

    def __neg__(self):
        return GroupElement(self.group, self.group.reduce([-a for a in self.coords]))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int):
        return GroupElement(self.group, self.group.reduce([k * a for a in self.coords]))

    __rmul__ = __mul__

    def __lt__(self, other: "GroupElement"):
        return self.coords < other.coords

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"GroupElement({self})"

    def to_json(self) -> list[int]:
        return list(self.coords)


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group operation; raises :class:`GroupError` when parents differ."""
    if a.group != b.group:
        raise GroupError(f"parent mismatch: {a.group} vs {b.group}")
    return a + b


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the source's coordinate generators.

    ``matrix[i]`` holds the target coordinates of the i-th generator.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(a) for a in row) for row in self.matrix)
        if len(mat) != self.source.rank or any(len(r) != self.target.rank for r in mat):
            raise GroupError("homomorphism matrix has the wrong shape")
        mat = tuple(self.target.reduce(row) for row in mat)
        object.__setattr__(self, "matrix", mat)
        for i, n in enumerate(self.source.torsion_moduli):
            row = mat[self.source.free_rank + i]
            if any(self.target.reduce([n * a for a in row])):
                raise GroupError(
                    f"generator {self.source.free_rank + i} has order {n} but its image does not"
                )

    @classmethod
    def from_images(cls, source, target, images: Sequence[GroupElement | Sequence[int]]) -> "GroupHom":
        rows = [im.coords if isinstance(im, GroupElement) else tuple(im) for im in images]
        return cls(source, target, tuple(rows))

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "GroupHom":
        return cls(group, group, tuple(tuple(int(i == j) for j in range(group.rank)) for i in range(group.rank)))

    @classmethod
    def trivial(cls, source: FgAbelianGroup, target: FgAbelianGroup | None = None) -> "GroupHom":
        target = target or FgAbelianGroup()
        return cls(source, target, tuple((0,) * target.rank for _ in range(source.rank)))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise GroupError(f"{x} is not in the source group {self.source}")
        out = [0] * self.target.rank
        for c, row in zip(x.coords, self.matrix):
            if c:
                for j, a in enumerate(row):
                    out[j] += c * a
        return GroupElement(self.target, self.target.reduce(out))

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite ``other ∘ self``."""
        if other.source != self.target:
            raise GroupError("homomorphisms do not compose")
        return GroupHom(self.source, other.target, tuple(other(GroupElement(self.target, self.target.reduce(r))).coords for r in self.matrix))

    def is_injective_on(self, elements: Iterable[GroupElement]) -> bool:
        seen = {}
        for x in elements:
            y = self(x)
            if y in seen and seen[y] != x:
                return False
            seen[y] = x
        return True


class Subgroup:
    """Subgroup of ``parent`` generated by ``generators``.

    The canonical data is the Hermite basis of the lattice spanned by the
    generators together with the parent's torsion relations; membership and
    coset representatives are read off by Hermite reduction.
    """

    def __init__(self, parent: FgAbelianGroup, generators: Iterable[GroupElement] = ()):
        gens = []
        for g in generators:
            if g.group != parent:
                raise GroupError(f"generator {g} is not in {parent}")
            gens.append(g)
        self.parent = parent
        self.generators = tuple(gens)
        self.hermite = tuple(
            tuple(r) for r in hermite_rows([list(g.coords) for g in gens] + parent.relation_rows(), parent.rank)
        )

    def __contains__(self, x: GroupElement) -> bool:
        return x.group == self.parent and not any(reduce_mod_hermite(x.coords, self.hermite))

    def contains(self, x: GroupElement) -> bool:
        return x in self

    def coset_key(self, x: GroupElement) -> GroupElement:
        """Canonical representative of the coset x + H."""
        return GroupElement(self.parent, self.parent.reduce(reduce_mod_hermite(x.coords, self.hermite)))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.hermite == other.hermite

    def __hash__(self):
        return hash((self.parent, self.hermite))

    @property
    def is_trivial(self) -> bool:
        return all(g.is_identity for g in self.generators)

    @property
    def is_finite(self) -> bool:
        return all(self.parent.element_order(g) is not None for g in self.generators)

    def elements(self) -> list[GroupElement]:
        """Sorted element list of a finite subgroup, by closure from the generators."""
        if not self.is_finite:
            raise GroupError("subgroup is infinite")
        seen = {self.parent.identity}
        frontier = [self.parent.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x + g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    @property
    def order(self) -> int | None:
        return len(self.elements()) if self.is_finite else None

    def __repr__(self):
        return f"Subgroup({self.parent}, <{', '.join(map(str, self.generators))}>)"


def subgroup_generated(group: FgAbelianGroup, gens: Iterable[GroupElement]) -> Subgroup:
    return Subgroup(group, gens)


def quotient(group: FgAbelianGroup, sub: Subgroup) -> tuple[FgAbelianGroup, GroupHom]:
    """G/H in invariant-factor form together with the canonical projection."""
    if sub.parent != group:
        raise GroupError("subgroup of a different group")
    r = group.rank
    rows = [list(row) for row in sub.hermite]
    if not rows:
        rows = [[0] * r]
    diag, _, v = smith_decomposition(rows, r)
    d = [diag[i][i] if i < len(diag) else 0 for i in range(r)]
    torsion_idx = [i for i in range(r) if d[i] > 1]
    free_idx = [i for i in range(r) if d[i] == 0]
    target = FgAbelianGroup(len(free_idx), tuple(d[i] for i in torsion_idx))
    order = free_idx + torsion_idx
    proj = GroupHom(group, target, tuple(tuple(v[row][c] for c in order) for row in range(r)))
    return target, proj


def finite_reduction(group: FgAbelianGroup, subset: Iterable[GroupElement]) -> tuple[int, GroupHom]:
    """Smallest m such that reducing the free coordinates mod m is injective on S ∪ S+S.

    The target is (Z/m)^p x torsion; for m = 1 the free coordinates are dropped.
    """
    s = list(dict.fromkeys(subset))
    t = list(dict.fromkeys(s + [a + b for a in s for b in s]))
    p = group.free_rank
    m = 1
    while True:
        phi = _reduction_hom(group, m)
        if phi.is_injective_on(t):
            return m, phi
        m += 1
        if p == 0:  # pragma: no cover - identity is always injective
            raise AssertionError("reduction of a finite group failed")


def _reduction_hom(group: FgAbelianGroup, m: int) -> GroupHom:
    p = group.free_rank
    keep_free = m > 1
    target = FgAbelianGroup(0, ((m,) * p if keep_free else ()) + group.torsion_moduli)
    rows = []
    for i in range(group.rank):
        row = [0] * target.rank
        if i < p:
            if keep_free:
                row[i] = 1
        else:
            row[(p if keep_free else 0) + (i - p)] = 1
        rows.append(tuple(row))
    return GroupHom(group, target, tuple(rows))
