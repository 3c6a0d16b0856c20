"""Upper block-triangular matrix algebras with elementary gradings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .algebra import GradedAlgebra, _unit_label, subalgebra
from .cyclotomic import ONE
from .groups import FgAbelianGroup, GroupElement, GroupError, Subgroup, subgroup_generated

__all__ = [
    "ElementarySpec",
    "NeutralIdeal",
    "build_ut_elementary",
    "decompose_neutral",
    "radical_power",
    "normalize_representatives",
    "omega_and_invariance",
    "block_invariance_subgroups",
    "capelli_bound",
]


@dataclass(frozen=True)
class ElementarySpec:
    """UT(d_1, ..., d_m) graded by deg e_ij = g_i - g_j."""

    block_sizes: tuple[int, ...]
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(int(d) for d in self.block_sizes))
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.block_sizes or any(d < 1 for d in self.block_sizes):
            raise ValueError("block sizes must be positive")
        if sum(self.block_sizes) != len(self.elements):
            raise ValueError(f"tuple has {len(self.elements)} entries, blocks need {sum(self.block_sizes)}")
        if len({g.group for g in self.elements}) != 1:
            raise GroupError("tuple entries must lie in one group")

    @classmethod
    def over(cls, group: FgAbelianGroup, block_sizes: Sequence[int], coords: Sequence) -> "ElementarySpec":
        """Convenience constructor from raw coordinate lists (or ints for rank-1 groups)."""
        elems = [group(c) if isinstance(c, (list, tuple)) else group(c) for c in coords]
        return cls(tuple(block_sizes), tuple(elems))

    @property
    def group(self) -> FgAbelianGroup:
        return self.elements[0].group

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def m(self) -> int:
        return len(self.block_sizes)

    def blocks(self) -> list[range]:
        out, start = [], 0
        for d in self.block_sizes:
            out.append(range(start, start + d))
            start += d
        return out

    def block_of(self) -> list[int]:
        return [b for b, d in enumerate(self.block_sizes) for _ in range(d)]

    def basis_pairs(self) -> list[tuple[int, int]]:
        """Matrix units (i, j), 0-based, in row-major order."""
        blk = self.block_of()
        return [(i, j) for i in range(self.n) for j in range(self.n) if blk[i] <= blk[j]]

    def with_elements(self, elements: Sequence[GroupElement]) -> "ElementarySpec":
        return ElementarySpec(self.block_sizes, tuple(elements))

    def __str__(self):
        blocks = ",".join(map(str, self.block_sizes))
        return f"UT({blocks}) tuple=({','.join(str(g) for g in self.elements)})"


def capelli_bound(block_sizes: Sequence[int]) -> int:
    """d_1^2 + ... + d_m^2 + m, the least Capelli rank vanishing on UT(d_1..d_m)."""
    return sum(d * d for d in block_sizes) + len(block_sizes)


def build_ut_elementary(spec: ElementarySpec, name: str | None = None) -> GradedAlgebra:
    pairs = spec.basis_pairs()
    index = {p: k for k, p in enumerate(pairs)}
    g = spec.elements
    labels = [_unit_label(i, j, spec.n) for i, j in pairs]
    degrees = [g[i] - g[j] for i, j in pairs]
    table = {}
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                table[a, b] = [(index[i, l], ONE)]
    unity = {index[i, i]: ONE for i in range(spec.n)}
    if name is None:
        name = "UT(" + ",".join(map(str, spec.block_sizes)) + ")"
    return GradedAlgebra(spec.group, labels, degrees, table, unity, name)


@dataclass(frozen=True)
class NeutralIdeal:
    """One summand B_k of A_e: matrix units e_ij with g_i = g_j = value."""

    value: GroupElement
    rows: tuple[int, ...]  # J_k, 0-based tuple positions
    shape: tuple[int, ...]  # |I_s ∩ J_k| over blocks s meeting J_k
    basis: tuple[int, ...]  # indices into build_ut_elementary(spec)
    labels: tuple[str, ...]
    algebra: GradedAlgebra


def decompose_neutral(spec: ElementarySpec) -> list[NeutralIdeal]:
    """Split A_e into the ideals indexed by distinct tuple values (first-appearance order).

    Each summand is checked to be an ideal of A_e, and distinct summands to
    annihilate each other.
    """
    alg = build_ut_elementary(spec)
    pairs = spec.basis_pairs()
    blk = spec.block_of()
    values = list(dict.fromkeys(spec.elements))
    neutral = set(alg.component(None))
    out = []
    for h in values:
        rows = tuple(i for i, g in enumerate(spec.elements) if g == h)
        rowset = set(rows)
        basis = tuple(k for k, (i, j) in enumerate(pairs) if i in rowset and j in rowset)
        counts = Counter(blk[i] for i in rows)
        shape = tuple(counts[s] for s in sorted(counts))
        sub = subalgebra(alg, basis, name="UT(" + ",".join(map(str, shape)) + ")")
        out.append(NeutralIdeal(h, rows, shape, basis, tuple(alg.labels[k] for k in basis), sub))
    # ideal and orthogonality checks against the structure constants
    member = {k: idx for idx, ideal in enumerate(out) for k in ideal.basis}
    if set(member) != neutral:
        raise AssertionError("neutral summands do not span A_e")
    for a in neutral:
        for b in neutral:
            for k, _ in alg.mul_basis(a, b):
                if member[k] != member[a] or member[a] != member[b]:
                    raise AssertionError(f"{alg.labels[a]}*{alg.labels[b]} leaves its summand")
    return out


def radical_power(spec: ElementarySpec, k: int) -> tuple[int, ...]:
    """Basis indices (into build_ut_elementary(spec)) spanning J(A)^k.

    J is spanned by the matrix units strictly above the diagonal blocks and
    J^k by those at block distance >= k; J^0 is the whole algebra.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    blk = spec.block_of()
    return tuple(a for a, (i, j) in enumerate(spec.basis_pairs()) if blk[j] - blk[i] >= k)


def normalize_representatives(spec: ElementarySpec, sub: Subgroup) -> ElementarySpec:
    """Replace each g_i by the first tuple entry in its coset g_i + H."""
    first: dict[GroupElement, GroupElement] = {}
    out = []
    for g in spec.elements:
        key = sub.coset_key(g)
        out.append(first.setdefault(key, g))
    return spec.with_elements(out)


def omega_and_invariance(elements: Sequence[GroupElement]) -> tuple[dict[GroupElement, int], Subgroup]:
    """Multiplicity map of a tuple and its invariance subgroup.

    A translation h preserving the multiplicities maps the (finite) support
    onto itself, so only differences s - s0 for a fixed s0 need checking.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("empty tuple")
    group = elements[0].group
    omega = dict(sorted(Counter(elements).items()))
    s0 = min(omega)
    found = []
    for s in omega:
        h = s - s0
        if all(omega.get(h + g, 0) == c for g, c in omega.items()):
            found.append(h)
    return omega, subgroup_generated(group, [h for h in found if not h.is_identity])


def block_invariance_subgroups(spec: ElementarySpec) -> list[Subgroup]:
    return [omega_and_invariance([spec.elements[i] for i in rng])[1] for rng in spec.blocks()]
