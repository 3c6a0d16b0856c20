"""Pauli-type division gradings and their commutation bicharacters.

For a pair of size n the basis is u_(a,b) = X^a Z^b over Z/n x Z/n with
ZX = zeta_n XZ, so u_(a,b) u_(c,d) = zeta_n^(bc) u_(a+c, b+d).  Several pairs
multiply as a tensor product, giving a fine grading on M_t, t = prod n_i.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import GradedAlgebra, coarsen, trivial_algebra
from .cyclotomic import ONE, CycScalar, root_of_unity
from .groups import FgAbelianGroup, GroupElement, GroupError, GroupHom, Subgroup, subgroup_generated

__all__ = [
    "DivisionSpec",
    "Bicharacter",
    "DivisionFactor",
    "build_pauli_division",
    "bicharacter_of",
    "pauli_group",
]


@dataclass(frozen=True)
class DivisionSpec:
    pauli_pairs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pauli_pairs", tuple(int(n) for n in self.pauli_pairs))
        if any(n < 1 for n in self.pauli_pairs):
            raise ValueError("pair sizes must be >= 1")

    @property
    def pairs(self) -> tuple[int, ...]:
        """Pairs of size > 1; size-1 pairs contribute nothing."""
        return tuple(n for n in self.pauli_pairs if n > 1)

    @property
    def pi_degree(self) -> int:
        return math.prod(self.pauli_pairs)


def pauli_group(spec: DivisionSpec) -> FgAbelianGroup:
    return FgAbelianGroup(0, tuple(n for n in spec.pairs for _ in range(2)))


def build_pauli_division(spec: DivisionSpec) -> tuple[GradedAlgebra, "Bicharacter"]:
    group = pauli_group(spec)
    pairs = spec.pairs
    if not pairs:
        alg = trivial_algebra(group)
        return alg, bicharacter_of(alg)
    exps = list(itertools.product(*[range(n) for n in pairs for _ in range(2)]))
    index = {e: k for k, e in enumerate(exps)}
    labels = [".".join(f"X{e[2 * p]}Z{e[2 * p + 1]}" for p in range(len(pairs))) for e in exps]
    zetas = [root_of_unity(n) for n in pairs]
    table = {}
    for e in exps:
        for f in exps:
            c = ONE
            prod = []
            for p, n in enumerate(pairs):
                a, b = e[2 * p], e[2 * p + 1]
                cc, d = f[2 * p], f[2 * p + 1]
                if (b * cc) % n:
                    c = c * zetas[p] ** ((b * cc) % n)
                prod += [(a + cc) % n, (b + d) % n]
            table[index[e], index[f]] = [(index[tuple(prod)], c)]
    degrees = [group(list(e)) for e in exps]
    name = "Pauli[" + ",".join(map(str, pairs)) + "]"
    alg = GradedAlgebra(group, labels, degrees, table, unity={index[exps[0]]: ONE}, name=name)
    return alg, bicharacter_of(alg)


class Bicharacter:
    """beta(g, h) with u_g u_h = beta(g, h) u_h u_g on the support of a division grading."""

    def __init__(self, group: FgAbelianGroup, values: dict[tuple[GroupElement, GroupElement], CycScalar]):
        self.group = group
        self.values = dict(values)
        self.support = sorted({g for g, _ in self.values})

    def __call__(self, g: GroupElement, h: GroupElement) -> CycScalar:
        return self.values[g, h]

    def support_subgroup(self) -> Subgroup:
        return subgroup_generated(self.group, self.support)

    def on_generators(self, gens: Sequence[GroupElement] | None = None) -> dict:
        gens = self.group.generators() if gens is None else list(gens)
        gens = [g for g in gens if (g, g) in self.values]
        return {(g, h): self.values[g, h] for g in gens for h in gens}

    def is_alternating(self) -> bool:
        return all(self.values[g, g] == 1 for g in self.support)

    def is_bimultiplicative(self) -> bool:
        sup = set(self.support)
        for g, h, k in itertools.product(self.support, repeat=3):
            if h + k in sup and self.values[g, h + k] != self.values[g, h] * self.values[g, k]:
                return False
            if g + h in sup and self.values[g + h, k] != self.values[g, k] * self.values[h, k]:
                return False
        return True

    def pushforward(self, hom: GroupHom) -> "Bicharacter":
        return Bicharacter(hom.target, {(hom(g), hom(h)): v for (g, h), v in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.group == other.group and self.values == other.values

    def __repr__(self):
        return f"Bicharacter(on {len(self.support)} degrees of {self.group})"


def bicharacter_of(alg: GradedAlgebra) -> Bicharacter:
    """Read beta off the structure constants of a division grading."""
    values = {}
    rep = {}
    for g, comp in alg.components.items():
        if len(comp) != 1:
            raise ValueError(f"component of degree {g} is not one-dimensional")
        rep[g] = comp[0]
    for g, i in rep.items():
        for h, j in rep.items():
            ij, ji = alg.mul_basis(i, j), alg.mul_basis(j, i)
            if len(ij) != 1 or len(ji) != 1 or ij[0][0] != ji[0][0]:
                raise ValueError("homogeneous basis elements do not multiply to a nonzero homogeneous element")
            values[g, h] = ij[0][1] / ji[0][1]
    return Bicharacter(alg.group, values)


@dataclass(frozen=True)
class DivisionFactor:
    """A Pauli division grading carried into a grading group G by an injective hom."""

    spec: DivisionSpec
    embedding: GroupHom

    def __post_init__(self):
        if self.embedding.source != pauli_group(self.spec):
            raise GroupError("embedding source must be the Pauli grading group")
        src = self.embedding.source
        if src.is_finite and not self.embedding.is_injective_on(src.elements()):
            raise GroupError("embedding of the division support is not injective")

    @classmethod
    def trivial(cls, group: FgAbelianGroup) -> "DivisionFactor":
        spec = DivisionSpec(())
        return cls(spec, GroupHom.trivial(pauli_group(spec), group))

    @classmethod
    def pauli(cls, pairs: Sequence[int], group: FgAbelianGroup, images=None) -> "DivisionFactor":
        """Pauli[pairs] embedded by generator images (default: identity when the groups agree)."""
        spec = DivisionSpec(tuple(pairs))
        src = pauli_group(spec)
        if images is None:
            if src != group:
                raise GroupError(f"need explicit images to embed {src} into {group}")
            hom = GroupHom.identity(group)
        else:
            hom = GroupHom.from_images(src, group, images)
        return cls(spec, hom)

    @property
    def group(self) -> FgAbelianGroup:
        return self.embedding.target

    @property
    def pi_degree(self) -> int:
        return self.spec.pi_degree

    def algebra(self) -> GradedAlgebra:
        alg, _ = build_pauli_division(self.spec)
        return coarsen(alg, self.embedding)

    def support(self) -> Subgroup:
        return subgroup_generated(self.group, [self.embedding(g) for g in self.embedding.source.generators()])

    def bicharacter(self) -> Bicharacter:
        return bicharacter_of(self.algebra())
