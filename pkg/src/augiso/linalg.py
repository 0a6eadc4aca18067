"""Gaussian elimination over GF(2^m).

Matrices are lists of rows of FieldElem.  Nothing here is clever; sizes in
this package are at most a few dozen rows.
"""
from __future__ import annotations

from .gfield import FieldElem, FieldSpec


def zeros(field: FieldSpec, nrows: int, ncols: int) -> list[list[FieldElem]]:
    return [[field.zero] * ncols for _ in range(nrows)]


def rref(mat, ncols: int | None = None):
    """Row-reduce a copy of ``mat``.

    Returns ``(reduced, pivots)`` where ``pivots[i]`` is the pivot column of
    row i.  Only the first ``ncols`` columns are used for pivoting, which is
    how augmented systems keep their right-hand side out of the pivot set.
    """
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    width = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a + f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def solve(a, b, field: FieldSpec):
    """Solve ``a x = b``.  Free variables are set to zero.

    Returns the solution list, or None when the system is inconsistent.
    ``a`` may have zero columns, in which case the system is consistent
    exactly when ``b`` vanishes.
    """
    nvars = len(a[0]) if a else 0
    if not a:
        return []
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug, ncols=nvars)
    for row in red[len(pivots):]:
        if row[nvars]:
            return None
    x = [field.zero] * nvars
    for i, c in enumerate(pivots):
        x[c] = red[i][nvars]
    return x


def nullspace(mat, ncols: int, field: FieldSpec):
    """Basis of ``{x : mat x = 0}``, one vector per free column."""
    if not mat:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(mat, ncols=ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = red[i][f]  # char 2: -x = x
        basis.append(v)
    return basis


def matmul(a, b, field: FieldSpec):
    if not a or not b:
        return [[field.zero] * (len(b[0]) if b else 0) for _ in a]
    inner = len(b)
    out = []
    for row in a:
        out.append([
            sum((row[k] * b[k][j] for k in range(inner)), field.zero)
            for j in range(len(b[0]))
        ])
    return out
