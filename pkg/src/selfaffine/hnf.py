"""Column Hermite normal form of integer matrices.

Matrices are lists of rows. The column form ``H = A U`` (``U`` unimodular)
is in column echelon shape: the pivot of column ``j`` lies in a strictly
lower row than that of column ``j-1``, pivots are positive, and entries to
the left of a pivot satisfy ``0 <= h < pivot``. Zero columns are dropped, so
the columns of ``H`` are a free basis of the lattice spanned by ``A``.
"""

from __future__ import annotations

from typing import Sequence


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hnf(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Return ``(H, pivot_rows)``; ``H`` has one column per lattice generator."""
    rows = len(a)
    cols = [list(c) for c in zip(*a)] if rows else []
    cols = [c for c in cols if any(c)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    r = 0
    for i in range(rows):
        active = [c for c in cols if c[i] != 0]
        if not active:
            continue
        cols = [c for c in cols if c[i] == 0]
        piv = active[0]
        for c in active[1:]:
            g, s, t = _xgcd(piv[i], c[i])
            p, q = piv[i] // g, c[i] // g
            # [piv, c] -> [s piv + t c, -q piv + p c] is unimodular
            piv, rest = (
                [s * x + t * y for x, y in zip(piv, c)],
                [p * y - q * x for x, y in zip(piv, c)],
            )
            if any(rest):
                cols.append(rest)
        if piv[i] < 0:
            piv = [-x for x in piv]
        for b in basis:
            k = b[i] // piv[i]
            if k:
                for idx in range(rows):
                    b[idx] -= k * piv[idx]
        basis.append(piv)
        pivots.append(i)
        r += 1
    return [[basis[j][i] for j in range(r)] for i in range(rows)], pivots


def solve_in_lattice(h: Sequence[Sequence[int]], pivots: Sequence[int], target: Sequence[int]) -> list[int] | None:
    """Integer ``x`` with ``H x = target``, or ``None`` if ``target`` is not in the lattice."""
    n = len(pivots)
    residual = list(target)
    x = [0] * n
    for j, i in enumerate(pivots):
        # rows above the pivot are already fixed by earlier columns
        if any(residual[k] for k in range(pivots[j - 1] + 1 if j else 0, i)):
            return None
        q, rem = divmod(residual[i], h[i][j])
        if rem:
            return None
        x[j] = q
        if q:
            for k in range(len(residual)):
                residual[k] -= q * h[k][j]
    if any(residual):
        return None
    return x
