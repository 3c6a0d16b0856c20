"""Graded polynomial identities of finite-dimensional graded algebras.

Soundness rests on multilinearity: a multilinear polynomial vanishes on A
iff it vanishes whenever each variable is replaced by a homogeneous basis
element of its degree.  The scanner walks a prefix trie of the polynomial's
words and prunes as soon as a partial product is zero, so only substitutions
with some nonzero term are ever materialized.

If the polynomial is alternating in a set of variables, substitutions that
repeat a basis element there vanish and permuting the values only flips the
sign, so just strictly increasing assignments are enumerated.  Witnesses are
the lexicographically least substitution in this reduced enumeration.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import AlgebraElement, GradedAlgebra, coarsen, neutral_component
from .cyclotomic import ONE as _ONE, CycScalar
from .groups import GroupElement, GroupHom, Subgroup, subgroup_generated
from .linalg import RowSpace
from .polynomials import GradedPolynomial, GradedVariable, capelli

__all__ = [
    "ResourceLimitError",
    "StructuralAssumptionError",
    "IdentityCheck",
    "IdentitySpace",
    "IdentityComparison",
    "is_identity",
    "nonzero_values",
    "capelli_rank",
    "capelli_rank_witness",
    "capelli_support_test",
    "recover_division_support",
    "identity_space",
    "same_identities_upto",
    "signatures_upto",
    "work_limit",
]

DEFAULT_MAX_DEGREE = 6
WORK_LIMIT_ENV = "GRADEDPI_MAX_WORK"
_DEFAULT_WORK_LIMIT = 200_000_000
# below this many raw substitutions a process pool costs more than it saves
PARALLEL_THRESHOLD = 1_000_000


class ResourceLimitError(RuntimeError):
    """Refusal to run a computation beyond the configured bounds."""


class StructuralAssumptionError(RuntimeError):
    """The input does not have the tensor form the computation presumes."""


def work_limit() -> int:
    """Ceiling on visited substitution-trie nodes per chunk of a scan (env ``GRADEDPI_MAX_WORK``)."""
    return int(os.environ.get(WORK_LIMIT_ENV, _DEFAULT_WORK_LIMIT))


# -- scanning core --------------------------------------------------------------


@dataclass
class _Plan:
    n: int
    comps: list[tuple[int, ...]]
    trie: dict
    before: list[list[int]]  # alternation partners that must carry smaller values
    after: list[list[int]]  # ... larger values
    mul: list
    limit: int


def _build_plan(poly: GradedPolynomial, alg: GradedAlgebra, leaf_values, alternating) -> _Plan:
    names = poly.names
    idx = {x: i for i, x in enumerate(names)}
    comps = [alg.component(v.resolved(alg.group)) for v in poly.variables]
    trie: dict = {}
    for word, leaf in leaf_values:
        node = trie
        for x in word:
            node = node.setdefault(idx[x], {})
        node[None] = leaf
    n = len(names)
    before = [[] for _ in range(n)]
    after = [[] for _ in range(n)]
    for cls in alternating:
        members = sorted(idx[x] for x in cls)
        for a, b in itertools.combinations(members, 2):
            after[a].append(b)
            before[b].append(a)
    return _Plan(n, comps, _freeze(trie), before, after, alg._mul, work_limit())


def _freeze(node: dict):
    # children as a list for faster iteration; the leaf payload sits under None
    return [(k, v if k is None else _freeze(v)) for k, v in sorted(node.items(), key=lambda kv: (kv[0] is not None, kv[0] or 0))]


def _scan_chunk(plan: _Plan, fixed_var: int | None, fixed_val: int | None):
    """All nonzero contributions with ``fixed_var`` pinned; returns (acc, visited)."""
    assign = [-1] * plan.n
    comps = plan.comps
    before, after = plan.before, plan.after
    mul = plan.mul
    acc: dict[tuple, dict] = {}
    visited = 0
    limit = plan.limit

    def candidates(v):
        if v == fixed_var:
            cand = (fixed_val,)
        else:
            cand = comps[v]
        lo, hi = -1, None
        for u in before[v]:
            if assign[u] >= 0 and assign[u] > lo:
                lo = assign[u]
        for u in after[v]:
            if assign[u] >= 0 and (hi is None or assign[u] < hi):
                hi = assign[u]
        if lo < 0 and hi is None:
            return cand
        return [b for b in cand if b > lo and (hi is None or b < hi)]

    def walk(node, partial):
        nonlocal visited
        for v, child in node:
            if v is None:
                key = tuple(assign)
                slot = acc.get(key)
                if slot is None:
                    slot = acc[key] = {}
                for k, c in partial.items():
                    _accumulate(slot, k, child, c)
                continue
            for b in candidates(v):
                visited += 1
                if visited > limit:
                    raise ResourceLimitError(
                        f"substitution scan exceeded {limit} steps; raise {WORK_LIMIT_ENV} to allow more"
                    )
                if partial is None:
                    nxt = {b: _ONE}
                else:
                    nxt = {}
                    for k, c in partial.items():
                        for k2, c2 in mul[k][b]:
                            val = c if c2.is_one() else c * c2
                            if k2 in nxt:
                                val = nxt[k2] + val
                                if val.is_zero():
                                    del nxt[k2]
                                    continue
                            nxt[k2] = val
                    if not nxt:
                        continue
                assign[v] = b
                walk(child, nxt)
                assign[v] = -1

    walk(plan.trie, None)
    return acc, visited


def _accumulate(slot, k, leaf, c):
    # leaf is a coefficient (identity checks) or a (column, coefficient) pair (identity spaces)
    if isinstance(leaf, tuple):
        col, coeff = leaf
        inner = slot.setdefault(k, {})
        v = c * coeff
        inner[col] = inner[col] + v if col in inner else v
    else:
        v = c * leaf
        slot[k] = slot[k] + v if k in slot else v


_POOL_PLAN: _Plan | None = None


def _pool_init(plan):
    global _POOL_PLAN
    _POOL_PLAN = plan


def _pool_chunk(args):
    return _scan_chunk(_POOL_PLAN, *args)


def _chunks(plan: _Plan, workers: int):
    """Yield (acc, visited) per value of the first variable, in increasing value order."""
    if plan.n == 0:
        yield _scan_chunk(plan, None, None)
        return
    tasks = [(0, b) for b in plan.comps[0]]
    if workers <= 1 or len(tasks) <= 1 or _substitution_space(plan) < PARALLEL_THRESHOLD:
        for t in tasks:
            yield _scan_chunk(plan, *t)
        return
    with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init, initargs=(plan,)) as ex:
        yield from ex.map(_pool_chunk, tasks)


# -- identity checks --------------------------------------------------------------


@dataclass
class IdentityCheck:
    holds: bool
    witness: dict[str, str] | None = None
    value: AlgebraElement | None = None
    vacuous: bool = False
    visited: int = 0
    nonzero_substitutions: int = 0
    substitution_space: int = 0

    def __iter__(self):
        # allows ``holds, witness = is_identity(...)``
        yield self.holds
        yield self.witness

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "vacuous": self.vacuous,
            "witness": self.witness,
            "value": None if self.value is None else self.value.to_json(),
            "counts": {
                "visited": self.visited,
                "nonzero_substitutions": self.nonzero_substitutions,
                "substitution_space": self.substitution_space,
            },
        }


def _substitution_space(plan: _Plan) -> int:
    return math.prod(len(c) for c in plan.comps)


def nonzero_values(
    poly: GradedPolynomial,
    alg: GradedAlgebra,
    *,
    alternating: Sequence[Sequence[str]] | None = None,
    workers: int = 1,
    stop_at_first: bool = False,
):
    """Yield (assignment, value) for substitutions with nonzero value, lexicographically.

    ``assignment`` maps variable names to basis indices.  When ``alternating``
    is None the alternation classes of ``poly`` are detected and used.
    """
    if alternating is None:
        alternating = poly.alternating_classes()
    plan = _build_plan(poly, alg, poly.terms.items(), alternating)
    names = poly.names
    if any(not c for c in plan.comps):
        return
    for acc, _ in _chunks(plan, workers):
        hits = []
        for key, vec in acc.items():
            vec = {k: c for k, c in vec.items() if not c.is_zero()}
            if vec:
                hits.append((key, vec))
        hits.sort()
        for key, vec in hits:
            yield dict(zip(names, key)), AlgebraElement(alg, vec)
        if hits and stop_at_first:
            return


def is_identity(poly: GradedPolynomial, alg: GradedAlgebra, *, workers: int = 1) -> IdentityCheck:
    """Decide whether a multilinear graded polynomial vanishes on ``alg``."""
    if not poly.is_multilinear():
        raise ValueError("only multilinear polynomials are supported")
    plan = _build_plan(poly, alg, poly.terms.items(), poly.alternating_classes())
    space = _substitution_space(plan)
    if any(not c for c in plan.comps):
        return IdentityCheck(True, vacuous=True, substitution_space=0)
    if not poly.terms:
        return IdentityCheck(True, substitution_space=space)
    visited = 0
    nonzero = 0
    for acc, seen in _chunks(plan, workers):
        visited += seen
        best = None
        for key, vec in acc.items():
            if any(not c.is_zero() for c in vec.values()):
                nonzero += 1
                if best is None or key < best:
                    best = key
        if best is not None:
            vec = {k: c for k, c in acc[best].items() if not c.is_zero()}
            witness = {x: alg.labels[b] for x, b in zip(poly.names, best)}
            return IdentityCheck(
                False, witness, AlgebraElement(alg, vec), False, visited, nonzero, space
            )
    return IdentityCheck(True, None, None, False, visited, 0, space)


def _ungraded(alg: GradedAlgebra) -> GradedAlgebra:
    return coarsen(alg, GroupHom.trivial(alg.group))


def capelli_rank_witness(alg: GradedAlgebra, *, workers: int = 1, max_rank: int | None = None):
    """Least t with Cap_t an ordinary identity, plus a witness that Cap_{t-1} is not."""
    flat = _ungraded(alg)
    bound = max_rank if max_rank is not None else flat.dim + 1
    prev = None
    for t in range(1, bound + 1):
        res = is_identity(capelli(t), flat, workers=workers)
        if res.holds:
            return t, prev
        prev = res
    raise ResourceLimitError(f"no Capelli identity up to rank {bound}")


def capelli_rank(alg: GradedAlgebra, *, workers: int = 1) -> int:
    """Least t such that Cap_t is an ordinary (ungraded) identity of ``alg``.

    Cap_t alternates in t variables, so t = dim + 1 always works.
    """
    return capelli_rank_witness(alg, workers=workers)[0]


def _support_polys(t: int, g: GroupElement) -> tuple[GradedPolynomial, GradedPolynomial]:
    low = capelli(t - 1) * GradedPolynomial.variable(f"x{t}", g)
    high = capelli(t).with_degree(f"x{t}", g)
    return low, high


def capelli_support_test(
    alg: GradedAlgebra, g: GroupElement, t: int | None = None, *, workers: int = 1
) -> bool:
    """True iff Cap_{t-1} x_t^g is not an identity and Cap_t(.., x_t^g, ..) is one.

    ``t`` defaults to the Capelli rank of the neutral component.
    """
    if t is None:
        t = capelli_rank(neutral_component(alg), workers=workers)
    low, high = _support_polys(t, g)
    if is_identity(low, alg, workers=workers).holds:
        return False
    return is_identity(high, alg, workers=workers).holds


def recover_division_support(alg: GradedAlgebra, *, workers: int = 1) -> Subgroup:
    """Degrees g in supp R passing the Capelli support test, checked to form a subgroup."""
    t = capelli_rank(neutral_component(alg), workers=workers)
    found = [g for g in alg.support if capelli_support_test(alg, g, t, workers=workers)]
    fs = set(found)
    if alg.group.identity not in fs:
        raise StructuralAssumptionError("identity degree failed the support test")
    for a in found:
        if -a not in fs or any(a + b not in fs for b in found):
            raise StructuralAssumptionError(f"recovered degrees {sorted(fs)} are not closed under the group law")
    return subgroup_generated(alg.group, found)


# -- multilinear identity spaces ------------------------------------------------


@dataclass
class IdentitySpace:
    """Multilinear identities at a fixed degree signature.

    Columns are the words x_p(1) ... x_p(n) over permutations p in
    lexicographic order; ``basis`` is the reduced echelon kernel basis.
    """

    signature: tuple[GroupElement, ...]
    words: tuple[tuple[int, ...], ...]
    basis: list[dict[int, CycScalar]]
    vacuous: bool = False
    rank: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def total(self) -> int:
        return len(self.words)

    def key(self):
        return tuple(tuple(sorted(v.items())) for v in self.basis)

    def variables(self) -> list[GradedVariable]:
        return [GradedVariable(f"x{i + 1}", g) for i, g in enumerate(self.signature)]

    def polynomials(self) -> list[GradedPolynomial]:
        vs = self.variables()
        out = []
        for vec in self.basis:
            terms = {tuple(vs[i].name for i in self.words[c]): v for c, v in vec.items()}
            out.append(GradedPolynomial(vs, terms))
        return out

    def word_polynomial(self, col: int) -> GradedPolynomial:
        vs = self.variables()
        return GradedPolynomial(vs, {tuple(vs[i].name for i in self.words[col]): 1})


def identity_space(
    signature: Sequence[GroupElement],
    alg: GradedAlgebra,
    *,
    max_degree: int = DEFAULT_MAX_DEGREE,
    workers: int = 1,
) -> IdentitySpace:
    """Kernel of the exact evaluation map on multilinear polynomials of a signature."""
    signature = tuple(signature)
    n = len(signature)
    if n > max_degree:
        raise ResourceLimitError(f"signature length {n} exceeds the configured maximum {max_degree}")
    words = tuple(itertools.permutations(range(n)))
    vs = [GradedVariable(f"x{i + 1}", g) for i, g in enumerate(signature)]
    probe = GradedPolynomial(vs, {})
    leaves = [(tuple(vs[i].name for i in w), (col, _ONE)) for col, w in enumerate(words)]
    plan = _build_plan(probe, alg, leaves, [])
    space = RowSpace(len(words))
    if any(not c for c in plan.comps):
        return IdentitySpace(signature, words, space.nullspace(), vacuous=True, rank=0)
    for acc, _ in _chunks(plan, workers):
        for key in sorted(acc):
            per_out = acc[key]
            for k in sorted(per_out):
                row = {c: v for c, v in per_out[k].items() if not v.is_zero()}
                if row:
                    space.add(row)
            if space.full:
                break
        if space.full:
            break
    return IdentitySpace(signature, words, space.nullspace(), rank=space.rank)


@dataclass
class IdentityComparison:
    equal: bool
    signature: tuple[GroupElement, ...] | None = None
    checked: int = 0
    left_dimension: int | None = None
    right_dimension: int | None = None

    def __bool__(self):
        return self.equal

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "signature": None if self.signature is None else [g.to_json() for g in self.signature],
            "signatures_checked": self.checked,
            "kernel_dimensions": [self.left_dimension, self.right_dimension],
        }


def signatures_upto(degrees: Iterable[GroupElement], max_n: int):
    """Sorted signatures (multisets) of length 1..max_n over ``degrees``.

    Multisets suffice: permuting a signature permutes variable names, which
    maps identity spaces onto each other.
    """
    degs = sorted(set(degrees))
    for n in range(1, max_n + 1):
        yield from itertools.combinations_with_replacement(degs, n)


def same_identities_upto(
    a: GradedAlgebra,
    b: GradedAlgebra,
    max_n: int,
    *,
    signatures: Iterable[Sequence[GroupElement]] | None = None,
    workers: int = 1,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> IdentityComparison:
    """Compare multilinear identity spaces for every signature up to length ``max_n``."""
    if a.group != b.group:
        raise ValueError(f"grading groups differ: {a.group} vs {b.group}")
    if max_n > max_degree:
        raise ResourceLimitError(f"degree bound {max_n} exceeds the configured maximum {max_degree}")
    if signatures is None:
        signatures = signatures_upto(set(a.support) | set(b.support), max_n)
    checked = 0
    for sig in signatures:
        sa = identity_space(sig, a, max_degree=max_degree, workers=workers)
        sb = identity_space(sig, b, max_degree=max_degree, workers=workers)
        checked += 1
        if sa.key() != sb.key():
            return IdentityComparison(False, tuple(sig), checked, sa.dimension, sb.dimension)
    return IdentityComparison(True, None, checked)
