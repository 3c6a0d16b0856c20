"""Exact Gauss-Jordan elimination over cyclotomic scalars.

Vectors are sparse dicts ``{column: CycScalar}`` with no stored zeros.
"""

from __future__ import annotations

from typing import Iterable

from .cyclotomic import CycScalar

__all__ = ["RowSpace", "nullspace", "rref"]


class RowSpace:
    """Incrementally maintained row space in reduced echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, CycScalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return len(self.pivots) == self.ncols

    def reduce(self, row: dict[int, CycScalar]) -> dict[int, CycScalar]:
        row = dict(row)
        for col in sorted(row):
            if col not in row:
                continue
            piv = self.pivots.get(col)
            if piv is None:
                continue
            f = row[col]
            for c, v in piv.items():
                nv = row.get(c)
                nv = -(f * v) if nv is None else nv - f * v
                if nv.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row: dict[int, CycScalar]) -> bool:
        """Insert ``row``; returns True when it enlarged the space."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = row[lead].inverse()
        row = {c: v * inv for c, v in row.items()}
        # keep the basis fully reduced
        for pcol, prow in self.pivots.items():
            f = prow.get(lead)
            if f is None:
                continue
            for c, v in row.items():
                nv = prow.get(c)
                nv = -(f * v) if nv is None else nv - f * v
                if nv.is_zero():
                    prow.pop(c, None)
                else:
                    prow[c] = nv
        self.pivots[lead] = row
        return True

    def basis(self) -> list[dict[int, CycScalar]]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def nullspace(self) -> list[dict[int, CycScalar]]:
        """Basis of {x : row . x = 0 for every row}, itself in reduced echelon form."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        vecs = []
        for f in free:
            v = {f: CycScalar.rational(1)}
            for pcol, prow in self.pivots.items():
                a = prow.get(f)
                if a is not None:
                    v[pcol] = -a
            vecs.append(v)
        return rref(vecs, self.ncols)


def rref(rows: Iterable[dict[int, CycScalar]], ncols: int) -> list[dict[int, CycScalar]]:
    space = RowSpace(ncols)
    for r in rows:
        space.add(r)
    return space.basis()


def nullspace(rows: Iterable[dict[int, CycScalar]], ncols: int) -> list[dict[int, CycScalar]]:
    space = RowSpace(ncols)
    for r in rows:
        space.add(r)
    return space.nullspace()
