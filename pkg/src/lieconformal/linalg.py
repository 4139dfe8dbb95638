"""Exact linear algebra over the Gaussian rationals.

Reduced row echelon form with leading-one normalization; the nullspace
basis it induces is deterministic (one vector per free column, with a 1 in
the free position), which the golden outputs depend on.
"""

from __future__ import annotations

from .scalars import ONE, Scalar, ZERO

Row = list[Scalar]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """In-place-free RREF; returns (reduced rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for rr in range(r, len(mat)):
            if not mat[rr][c].is_zero():
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for rr in range(len(mat)):
            if rr != r and not mat[rr][c].is_zero():
                f = mat[rr][c]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def nullspace(rows: list[Row], ncols: int) -> list[Row]:
    """Basis of {x : A x = 0}, one vector per free column of the RREF."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis: list[Row] = []
    for free in free_cols:
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][free]
        basis.append(vec)
    return basis


def rank(rows: list[Row]) -> int:
    return len(rref(rows)[1])
