"""Exact dense linear algebra over a fixed cyclotomic field.

Matrices are lists of rows of Cyclotomic sharing one order m.  Pivoting is
deterministic: the first row with a nonzero entry in the current column
wins, so reduced forms and kernel bases are reproducible across runs.
Kernel vectors are normalized with each free variable set to 1.
"""

from __future__ import annotations

from .cyclo import Cyclotomic
from .errors import DomainError


def _order_of(rows):
    for row in rows:
        for c in row:
            return c.m
    raise DomainError("cannot infer cyclotomic order from an empty matrix")


def rref(rows):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    if not rows:
        return [], []
    m = _order_of(rows)
    work = [list(r) for r in rows]
    ncols = len(work[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = next(
            (i for i in range(r, len(work)) if not work[i][col].is_zero()), None
        )
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][col].inverse()
        work[r] = [c * inv for c in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][col].is_zero():
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    del m
    return work, pivots


def nullspace(rows):
    """Basis of the right kernel, one vector per free column,
    free variable normalized to 1."""
    if not rows:
        return []
    m = _order_of(rows)
    reduced, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Cyclotomic.zero(m) for _ in range(ncols)]
        v[fc] = Cyclotomic.one(m)
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][fc]
        basis.append(v)
    return basis


def matrix_inverse(rows):
    """Inverse of a square matrix; raises DomainError if singular."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DomainError("matrix_inverse needs a nonempty square matrix")
    m = _order_of(rows)
    zero, one = Cyclotomic.zero(m), Cyclotomic.one(m)
    aug = [
        list(r) + [one if i == j else zero for j in range(n)]
        for i, r in enumerate(rows)
    ]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in reduced]


def mat_vec(rows, vec):
    out = []
    for row in rows:
        acc = Cyclotomic.zero(vec[0].m)
        for a, b in zip(row, vec):
            acc = acc + a * b
        out.append(acc)
    return out


def mat_mul(a, b):
    cols = list(zip(*b))
    m = _order_of(a)
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = Cyclotomic.zero(m)
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out
