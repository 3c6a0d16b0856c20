"""Integer row-lattice normal forms (Hermite and Smith) with exact ints."""

from __future__ import annotations

__all__ = ["hermite_rows", "reduce_mod_hermite", "smith_decomposition", "identity_matrix"]


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hermite_rows(rows, ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero HNF rows: pivots strictly move right, pivot entries
    are positive and entries above a pivot lie in [0, pivot).  The result
    depends only on the lattice, so it doubles as a canonical key.
    """
    work = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while work and col < ncols:
        active = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        work = [r for r in rest if any(r)]
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        pc = _pivot_col(out[i])
        p = out[i][pc]
        for j in range(i):
            q = out[j][pc] // p
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def _pivot_col(row) -> int:
    return next(i for i, a in enumerate(row) if a)


def reduce_mod_hermite(vec, hnf) -> tuple[int, ...]:
    """Canonical representative of ``vec`` modulo the lattice with HNF ``hnf``."""
    v = list(vec)
    for row in hnf:
        pc = _pivot_col(row)
        q = v[pc] // row[pc]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def smith_decomposition(mat, ncols: int):
    """Return (D, U, V) with U * mat * V = D diagonal and d_i | d_{i+1}.

    ``mat`` is a list of k integer rows of length ``ncols``; U (k x k) and
    V (ncols x ncols) are unimodular.
    """
    a = [list(r) for r in mat]
    k = len(a)
    u = identity_matrix(k)
    v = identity_matrix(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(k, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, k):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = next(
                ((i, j) for i in range(t + 1, k) for j in range(t + 1, ncols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            neg_row(t)
        t += 1
    return a, u, v
