"""A-good polynomials and the transfer of division-algebra identities into A ⊗ B.

For R = A ⊗ B with B a graded division algebra, a multilinear g over
supp B is an identity of B iff g(f^{h_1}, ..., f^{h_u}) Cap_{t-1} is an
identity of R, where f is A-good and t is the Capelli rank of A_e.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GradedAlgebra, center_of, neutral_component, tensor
from .division import DivisionFactor
from .identities import capelli_rank, is_identity, nonzero_values
from .linalg import RowSpace
from .polynomials import GradedPolynomial, capelli, central_poly, evaluate
from .ut import ElementarySpec, build_ut_elementary, capelli_bound, decompose_neutral

__all__ = [
    "AGoodError",
    "AGoodReport",
    "a_good",
    "check_a_good",
    "compose_transfer",
    "division_transfer_check",
]


class AGoodError(AssertionError):
    """The constructed polynomial failed one of the A-good clauses."""


@dataclass
class AGoodReport:
    """Outcome of the three clauses, checked over matrix-unit substitutions of A_e.

    ``central`` is clause (iii) as stated: every value of f that survives
    multiplication by a value of Cap_{t-1} is central in A_e.  ``block_scalar``
    is the weaker property that such a value is a scalar multiple of the unit
    of one diagonal block, which is what the transfer argument consumes.
    """

    multilinear: bool
    non_identity: bool
    central: bool
    block_scalar: bool
    substitutions: int = 0
    counterexample: dict[str, str] | None = None
    witness: dict[str, str] | None = None

    @property
    def ok(self) -> bool:
        return self.multilinear and self.non_identity and self.central

    def to_json(self) -> dict:
        return {
            "multilinear": self.multilinear,
            "non_identity": self.non_identity,
            "central": self.central,
            "block_scalar": self.block_scalar,
            "substitutions": self.substitutions,
            "counterexample": self.counterexample,
            "witness": self.witness,
        }


def _choose_k(spec: ElementarySpec, t: int) -> int:
    ideals = decompose_neutral(spec)
    ranks = [capelli_bound(i.shape) for i in ideals]
    if max(ranks) != t:
        raise AGoodError(f"Capelli rank {t} of A_e disagrees with the summand bound {max(ranks)}")
    return max(i.shape[0] for i, r in zip(ideals, ranks) if r == t)


def _block_units(spec: ElementarySpec, alg: GradedAlgebra) -> list[frozenset[int]]:
    """Index sets of the diagonal units e_ii for i in (block s) ∩ (rows of one neutral ideal)."""
    blk = spec.block_of()
    units = {(i, j): k for k, (i, j) in enumerate(spec.basis_pairs())}
    out = []
    for ideal in decompose_neutral(spec):
        parts: dict[int, list[int]] = {}
        for i in ideal.rows:
            parts.setdefault(blk[i], []).append(units[i, i])
        out.extend(frozenset(v) for v in parts.values())
    # translate from indices of the full algebra to those of A_e
    index = {lab: k for k, lab in enumerate(alg.labels)}
    full = build_ut_elementary(spec)
    return [frozenset(index[full.labels[k]] for k in part) for part in out]


def _is_block_scalar(value, parts) -> bool:
    support = frozenset(value.coeffs)
    if support not in parts:
        return False
    coeffs = list(value.coeffs.values())
    return all(c == coeffs[0] for c in coeffs)


def check_a_good(spec: ElementarySpec, f: GradedPolynomial, t: int, *, workers: int = 1) -> AGoodReport:
    """Brute-force the A-good clauses for f against the neutral component of UT(spec)."""
    full = build_ut_elementary(spec)
    ae = neutral_component(full)
    cap = capelli(t - 1)
    multilinear = not (set(f.names) & set(cap.names))
    if not multilinear:
        return AGoodReport(False, False, False, False)
    product = f * cap
    multilinear = product.is_multilinear()
    res = is_identity(product, ae, workers=workers)
    center = RowSpace(ae.dim)
    for z in center_of(ae):
        center.add(dict(z.coeffs))
    parts = _block_units(spec, ae)
    fnames = f.names
    basis = ae.basis()
    cache = {}
    central = block_scalar = True
    counterexample = None
    count = 0
    for assign, _ in nonzero_values(product, ae, workers=workers):
        count += 1
        key = tuple(assign[x] for x in fnames)
        if key not in cache:
            value = evaluate(f, {x: basis[b] for x, b in zip(fnames, key)}, ae)
            cache[key] = (not center.reduce(dict(value.coeffs)), _is_block_scalar(value, parts))
        is_central, is_scalar = cache[key]
        if not is_central and counterexample is None:
            counterexample = {x: ae.labels[b] for x, b in assign.items()}
        central &= is_central
        block_scalar &= is_scalar
    return AGoodReport(multilinear, not res.holds, central, block_scalar, count, counterexample, res.witness)


def a_good(spec: ElementarySpec, *, workers: int = 1, strict: bool = True) -> tuple[GradedPolynomial, int]:
    """An A-good polynomial f for UT(spec) and the Capelli rank t of its neutral component.

    With ``strict`` the literal centrality clause must hold; otherwise the
    block-scalar form is accepted.
    """
    ae = neutral_component(build_ut_elementary(spec))
    t = capelli_rank(ae, workers=workers)
    f = central_poly(_choose_k(spec, t))
    report = check_a_good(spec, f, t, workers=workers)
    good = report.ok if strict else (report.multilinear and report.non_identity and report.block_scalar)
    if not good:
        raise AGoodError(f"A-good check failed for {spec}: {report.to_json()}")
    return f, t


def compose_transfer(g: GradedPolynomial, f: GradedPolynomial, t: int) -> GradedPolynomial:
    """g(f^{h_1}, ..., f^{h_u}) Cap_{t-1} on fresh, deterministically named variables.

    Slot i receives a copy of f on variables f{i}_1, f{i}_2, ... whose first
    variable takes the degree of the i-th variable of g; the Capelli factor
    uses cx*, cy*.
    """
    out = g
    for i, v in enumerate(g.variables, start=1):
        copy = f.rename({x: f"f{i}_{j}" for j, x in enumerate(f.names, start=1)})
        copy = copy.with_degree(copy.names[0], v.degree)
        out = out.substitute(v.name, copy)
    result = out * capelli(t - 1, x="cx", y="cy")
    if not result.is_multilinear():
        raise AssertionError("transfer polynomial is not multilinear")
    return result


def division_transfer_check(
    g: GradedPolynomial,
    spec: ElementarySpec,
    division: DivisionFactor,
    *,
    workers: int = 1,
    good: tuple[GradedPolynomial, int] | None = None,
) -> tuple[bool, bool]:
    """(g is an identity of B, the transferred polynomial is an identity of UT(spec) ⊗ B)."""
    b = division.algebra()
    r = tensor(build_ut_elementary(spec), b)
    f, t = good if good is not None else a_good(spec, workers=workers, strict=False)
    lhs = is_identity(g, b, workers=workers).holds
    rhs = is_identity(compose_transfer(g, f, t), r, workers=workers).holds
    return lhs, rhs
