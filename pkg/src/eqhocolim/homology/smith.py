"""Ranks and Smith normal forms of sparse integer matrices.

Matrices arrive as a list of sparse columns, each a ``{row: value}`` dict.
Boundary matrices of simplicial sets are very sparse with entries mostly
``±1``, so elimination first clears every unit pivot it can find (each
contributes an invariant factor 1) and only the leftover core goes through
a dense Smith normal form.  All integer arithmetic uses Python ints, so
there is no overflow.
"""

from __future__ import annotations

from math import gcd


def _copy(columns) -> tuple[dict[int, dict[int, int]], dict[int, set[int]]]:
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        c = {int(r): int(v) for r, v in col.items() if v}
        if c:
            cols[j] = c
            for r in c:
                rows.setdefault(r, set()).add(j)
    return cols, rows


def _eliminate(cols, rows, p: int | None) -> int:
    """Clear unit pivots in place; returns how many were cleared.

    With ``p`` set, arithmetic is modulo ``p`` and every nonzero entry is a unit.
    Columns are visited shortest first, and within a column the pivot row is
    the sparsest one, which keeps fill-in low on boundary matrices.
    """
    cleared = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda j: len(cols[j])):
            pivot_col = cols.get(j)
            if pivot_col is None:
                continue
            r = None
            for rr, v in pivot_col.items():
                unit = (v % p != 0) if p else (v == 1 or v == -1)
                if unit and (r is None or len(rows[rr]) < len(rows[r])):
                    r = rr
            if r is None:
                continue
            del cols[j]
            for rr in pivot_col:
                rows[rr].discard(j)
            a = pivot_col[r]
            inv = pow(a, -1, p) if p else a  # a == ±1 is its own inverse
            for k in list(rows[r]):
                col = cols[k]
                factor = col[r] * inv
                if p:
                    factor %= p
                for rr, v in pivot_col.items():
                    nv = col.get(rr, 0) - factor * v
                    if p:
                        nv %= p
                    if nv:
                        if rr not in col:
                            rows.setdefault(rr, set()).add(k)
                        col[rr] = nv
                    elif rr in col:
                        del col[rr]
                        rows[rr].discard(k)
                if not col:
                    del cols[k]
            del rows[r]
            cleared += 1
            progress = True
    return cleared


def rank_mod_p(columns, p: int) -> int:
    cols, rows = _copy([{r: v % p for r, v in col.items()} for col in columns])
    return _eliminate(cols, rows, p)


def _dense_core(cols) -> list[list[int]]:
    row_ids = sorted({r for c in cols.values() for r in c})
    pos = {r: i for i, r in enumerate(row_ids)}
    col_ids = sorted(cols)
    mat = [[0] * len(col_ids) for _ in row_ids]
    for jj, j in enumerate(col_ids):
        for r, v in cols[j].items():
            mat[pos[r]][jj] = v
    return mat


def dense_smith(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix, each dividing the next."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block as pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, m):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # normalize divisibility chain
    changed = True
    while changed:
        changed = False
        for k in range(len(diag) - 1):
            x, y = diag[k], diag[k + 1]
            g = gcd(x, y)
            if g != x:
                diag[k], diag[k + 1] = g, x * y // g
                changed = True
    return diag


def invariant_factors(columns) -> list[int]:
    """Nonzero invariant factors (sorted, each dividing the next)."""
    cols, rows = _copy(columns)
    ones = _eliminate(cols, rows, None)
    core = dense_smith(_dense_core(cols)) if cols else []
    return sorted([1] * ones + core)


def rank_over_q(columns) -> int:
    return len(invariant_factors(columns))
