"""Graded isomorphism of UT(d_1..d_m) ⊗ B for elementary UT gradings and division B.

R ≅ R' iff B ≅ B', the block sizes agree, and g'_i = g_σ(i) + h_σ(i) + g for
some shift g, corrections h_i in supp B and a block-preserving permutation σ
(written additively).  Candidate shifts are finite up to supp B: σ(1) lies in
the first block, so gH is one of (g'_1 - g_j)H.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .algebra import GradedAlgebra, coarsen, matrix_algebra, tensor
from .division import Bicharacter, DivisionFactor, bicharacter_of
from .groups import FgAbelianGroup, GroupElement, GroupHom, Subgroup, quotient, subgroup_generated
from .identities import (
    DEFAULT_MAX_DEGREE,
    IdentityComparison,
    StructuralAssumptionError,
    recover_division_support,
    same_identities_upto,
)
from .ut import ElementarySpec, block_invariance_subgroups, build_ut_elementary

__all__ = [
    "IsoWitness",
    "PipelineVerdict",
    "TensorModel",
    "compare_division",
    "division_iso",
    "elementary_tensor_iso",
    "build_coarse_elementary",
    "ds_condition",
    "pipeline",
]


@dataclass(frozen=True)
class TensorModel:
    """R = UT(spec) ⊗ B with B a division grading in the same group."""

    spec: ElementarySpec
    division: DivisionFactor

    def __post_init__(self):
        if self.spec.group != self.division.group:
            raise ValueError(f"groups differ: {self.spec.group} vs {self.division.group}")

    @property
    def group(self) -> FgAbelianGroup:
        return self.spec.group

    def algebra(self) -> GradedAlgebra:
        return tensor(build_ut_elementary(self.spec), self.division.algebra())


@dataclass(frozen=True)
class IsoWitness:
    """Data (g, h, σ) with g'_i = g_σ(i) + h_σ(i) + g; indices are 0-based.

    ``corrections[j]`` is h_j for position j of the first tuple; ``permutation[i]`` is σ(i).
    """

    shift: GroupElement
    corrections: tuple[GroupElement, ...]
    permutation: tuple[int, ...]

    def verify(self, spec: ElementarySpec, spec2: ElementarySpec, support: Subgroup) -> bool:
        if spec.block_sizes != spec2.block_sizes or sorted(self.permutation) != list(range(spec.n)):
            return False
        blk = spec.block_of()
        for i, j in enumerate(self.permutation):
            if blk[i] != blk[j] or self.corrections[j] not in support:
                return False
            if spec2.elements[i] != spec.elements[j] + self.corrections[j] + self.shift:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "shift": self.shift.to_json(),
            "corrections": [h.to_json() for h in self.corrections],
            "permutation": list(self.permutation),
        }


# -- division factors --------------------------------------------------------------


def _division_data(b) -> tuple[Subgroup, Bicharacter]:
    if isinstance(b, DivisionFactor):
        return b.support(), b.bicharacter()
    beta = bicharacter_of(b)
    return subgroup_generated(b.group, b.support), beta


def compare_division(b, b2) -> str | None:
    """None when the supports and bicharacters agree, otherwise the first difference."""
    (s, beta), (s2, beta2) = _division_data(b), _division_data(b2)
    if s.parent != s2.parent:
        return "groups differ"
    if s != s2:
        return "supports differ"
    for g in beta.support:
        for h in beta.support:
            if beta(g, h) != beta2(g, h):
                return f"bicharacters differ at ({g}, {h})"
    return None


def division_iso(b, b2) -> bool:
    """Graded division algebras over one group are isomorphic iff support and bicharacter agree."""
    return compare_division(b, b2) is None


# -- the elementary criterion --------------------------------------------------------


def _shift_candidates(spec: ElementarySpec, spec2: ElementarySpec, sub: Subgroup) -> list[GroupElement]:
    first = spec.blocks()[0]
    keys = {sub.coset_key(spec2.elements[0] - spec.elements[j]) for j in first}
    return sorted(keys)


def _match(spec, spec2, sub, g) -> IsoWitness | None:
    # blockwise greedy matching of cosets; σ(i) is the first unused j with g_j H = (g'_i - g) H
    sigma = [0] * spec.n
    h = [None] * spec.n
    for rng in spec.blocks():
        pool = defaultdict(list)
        for j in rng:
            pool[sub.coset_key(spec.elements[j])].append(j)
        for i in rng:
            key = sub.coset_key(spec2.elements[i] - g)
            if not pool[key]:
                return None
            j = pool[key].pop(0)
            sigma[i] = j
            h[j] = spec2.elements[i] - spec.elements[j] - g
    return IsoWitness(g, tuple(h), tuple(sigma))


def elementary_tensor_iso(
    spec: ElementarySpec, b: DivisionFactor, spec2: ElementarySpec, b2: DivisionFactor
) -> IsoWitness | None:
    """Witness for UT(spec) ⊗ b ≅ UT(spec2) ⊗ b2, or None when none exists.

    Shifts are tried in increasing order of coset representative; each found
    witness is re-verified before being returned.
    """
    if spec.block_sizes != spec2.block_sizes or spec.group != spec2.group:
        return None
    if not division_iso(b, b2):
        return None
    sub = b.support()
    for g in _shift_candidates(spec, spec2, sub):
        w = _match(spec, spec2, sub, g)
        if w is not None:
            if not w.verify(spec, spec2, sub):
                raise AssertionError("constructed witness does not verify")
            return w
    return None


def build_coarse_elementary(
    spec: ElementarySpec, sub: Subgroup, t: int
) -> tuple[ElementarySpec, GroupHom]:
    """UT(d_1 t, ..., d_m t) over G/H with every coset g_i H repeated t times."""
    if t < 1:
        raise ValueError("t must be positive")
    _, alpha = quotient(spec.group, sub)
    elems = [alpha(g) for g in spec.elements for _ in range(t)]
    return ElementarySpec(tuple(d * t for d in spec.block_sizes), tuple(elems)), alpha


def ds_condition(spec: ElementarySpec) -> tuple[bool, str]:
    """Sufficient condition for identities to determine the elementary grading."""
    if spec.m <= 2:
        return True, f"{spec.m} block(s)"
    for s, sub in enumerate(block_invariance_subgroups(spec)):
        if sub.is_trivial:
            return True, f"block {s + 1} has trivial invariance subgroup"
    return False, "more than two blocks, all with nontrivial invariance subgroups"


def _lift(coarse: IsoWitness, spec, spec2, alpha: GroupHom, sub: Subgroup) -> IsoWitness | None:
    for j in spec.blocks()[0]:
        g = spec2.elements[0] - spec.elements[j]
        if alpha(g) == coarse.shift:
            w = _match(spec, spec2, sub, sub.coset_key(g))
            if w is not None and w.verify(spec, spec2, sub):
                return w
    return None


# -- pipeline -------------------------------------------------------------------------


@dataclass
class PipelineVerdict:
    final: str  # isomorphic | not-isomorphic | inconclusive
    stages: dict = field(default_factory=dict)
    witness: IsoWitness | None = None
    invariant: dict | None = None

    def __post_init__(self):
        if self.final == "isomorphic" and self.witness is None:
            raise ValueError("isomorphic verdict requires a witness")
        if self.final == "not-isomorphic" and self.invariant is None:
            raise ValueError("not-isomorphic verdict requires a distinguishing invariant")

    @property
    def definitive(self) -> bool:
        return self.final != "inconclusive"

    def to_json(self) -> dict:
        return {
            "final": self.final,
            "stages": self.stages,
            "witness": None if self.witness is None else self.witness.to_json(),
            "invariant": self.invariant,
        }


def _sig_json(sig):
    return [g.to_json() for g in sig]


def pipeline(
    model: TensorModel,
    model2: TensorModel,
    max_degree: int = 3,
    *,
    workers: int = 1,
    verify_pi_degree: bool = False,
) -> PipelineVerdict:
    """Decide R ≅ R' through support recovery, division comparison and the coarse model."""
    if max_degree > DEFAULT_MAX_DEGREE:
        raise ValueError(f"max_degree above {DEFAULT_MAX_DEGREE} is refused")
    spec, spec2 = model.spec, model2.spec
    r, r2 = model.algebra(), model2.algebra()
    stages: dict = {}

    # 1. supports recovered from identities
    recovered = []
    for name, alg, m in (("R", r, model), ("R'", r2, model2)):
        try:
            h = recover_division_support(alg, workers=workers)
        except StructuralAssumptionError as exc:
            stages["support"] = {"error": str(exc), "algebra": name}
            return PipelineVerdict("inconclusive", stages)
        recovered.append(h)
        stages.setdefault("support", {})[name] = {
            "recovered": [g.to_json() for g in h.elements()],
            "matches_spec": h == m.division.support(),
        }
    if recovered[0] != recovered[1]:
        stages["support"]["equal"] = False
        return PipelineVerdict("not-isomorphic", stages, invariant={"reason": "division supports differ"})
    stages["support"]["equal"] = True
    sub = recovered[0]

    # 2. division factors
    diff = compare_division(model.division, model2.division)
    stages["division_iso"] = diff is None
    if diff is not None:
        reason = diff
        if model.division.pi_degree != model2.division.pi_degree:
            reason = f"pi-degree mismatch; {diff}"
        return PipelineVerdict("not-isomorphic", stages, invariant={"reason": reason})
    t = model.division.pi_degree
    stages["pi_degree"] = t
    if verify_pi_degree:
        flat = coarsen(model.division.algebra(), GroupHom.trivial(model.group))
        stages["pi_degree_check"] = same_identities_upto(
            flat, matrix_algebra(t, flat.group), min(4, DEFAULT_MAX_DEGREE), workers=workers
        ).equal

    # 3. coarse models
    u, alpha = build_coarse_elementary(spec, sub, t)
    u2, _ = build_coarse_elementary(spec2, sub, t)
    coarse = {}
    for name, alg, us in (("R", r, u), ("R'", r2, u2)):
        cmp = same_identities_upto(coarsen(alg, alpha), build_ut_elementary(us), max_degree, workers=workers)
        coarse[name] = cmp.to_json()
    stages["coarse_identities"] = coarse
    stages["coarse_specs"] = [str(u), str(u2)]

    # 4. isomorphism of the coarse models, lifted to G
    q = u.group
    cw = elementary_tensor_iso(u, DivisionFactor.trivial(q), u2, DivisionFactor.trivial(q))
    stages["coarse_iso"] = cw is not None
    if cw is not None:
        w = _lift(cw, spec, spec2, alpha, sub)
        if w is None:
            raise AssertionError("coarse witness did not lift")
        return PipelineVerdict("isomorphic", stages, witness=w)

    # 5. no coarse isomorphism
    ds = [ds_condition(u), ds_condition(u2)]
    stages["ds_condition"] = [{"holds": h, "reason": why} for h, why in ds]
    stages["criterion_witness_exists"] = elementary_tensor_iso(spec, model.division, spec2, model2.division) is not None
    cmp: IdentityComparison = same_identities_upto(r, r2, max_degree, workers=workers)
    stages["identities"] = cmp.to_json()
    if not cmp.equal:
        return PipelineVerdict(
            "not-isomorphic",
            stages,
            invariant={"reason": "graded identities differ", "signature": _sig_json(cmp.signature)},
        )
    for h, why in ds:
        if h:
            return PipelineVerdict(
                "not-isomorphic",
                stages,
                invariant={"reason": "coarse models not isomorphic and identities determine them", "ds": why},
            )
    return PipelineVerdict("inconclusive", stages)
