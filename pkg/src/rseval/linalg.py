"""Gaussian elimination over any field object from :mod:`rseval.algebra`.

Matrices are lists of rows of ints. Pivots are taken column by column, left
to right, using the first usable row; free variables are always set to zero.
That makes every solution below a deterministic function of the input.
"""

from __future__ import annotations

from typing import Optional, Sequence

Matrix = list[list[int]]


def rref(F, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = F.inv(M[r][c])
        if inv != 1:
            M[r] = [F.mul(inv, a) for a in M[r]]
        pivot_row = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], pivot_row)]
        pivots.append(c)
        r += 1
    return M[: len(pivots)], pivots


def rank(F, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> int:
    return len(rref(F, rows, ncols)[1])


def solve(F, A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """One solution of ``A x = b`` with free variables zero, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def nullspace(F, A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x : A x = 0}``, one vector per free column, ascending."""
    R, pivots = rref(F, A, ncols) if A else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [0] * ncols
        x[free] = 1
        for row, c in zip(R, pivots):
            if row[free]:
                x[c] = F.neg(row[free])
        basis.append(x)
    return basis


def inverse(F, M: Sequence[Sequence[int]]) -> Matrix:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def mat_vec(F, M: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def in_span(F, rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    ncols = len(v)
    return rank(F, list(rows) + [list(v)], ncols) == rank(F, rows, ncols)


def same_span(F, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int) -> tuple[bool, bool]:
    """(span A ⊆ span B, span B ⊆ span A)."""
    ra, rb = rank(F, A, ncols), rank(F, B, ncols)
    rab = rank(F, list(A) + list(B), ncols)
    return rab == rb, rab == ra
