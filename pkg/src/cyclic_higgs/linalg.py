"""Exact dense linear algebra over any field with exact equality.

Entries may be ints, Fractions or ExactScalars; matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Any, Sequence

Matrix = list[list[Any]]


def _is_zero(x) -> bool:
    return x == 0


def identity(n: int) -> Matrix:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if not _is_zero(x)]
        out_row = []
        for col in bt:
            acc = 0
            for k, x in nz:
                y = col[k]
                if not _is_zero(y):
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if not _is_zero(x) and not _is_zero(y):
                acc = acc + x * y
        out.append(acc)
    return out


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Q(1, m[r][c])
        m[r] = [x * inv if not _is_zero(x) else x for x in m[r]]
        for i in range(rows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y if not _is_zero(y) else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}, in reduced-echelon normal form (each vector
    has a 1 in its free coordinate)."""
    if not a:
        return [[Q(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v: list[Any] = [Q(0)] * n
        v[f] = Q(1)
        for row, pc in zip(m, pivots):
            if not _is_zero(row[f]):
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list:
    """Unique solution of a x = b for square invertible a."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [m[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in m[:n]]


def det(a: Sequence[Sequence]):
    """Determinant by Gaussian elimination."""
    m = [list(r) for r in a]
    n = len(m)
    d = Q(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return Q(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c] if not isinstance(m[c][c], int) else Q(1, m[c][c])
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def leading_minors(a: Sequence[Sequence]) -> list:
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def charpoly(a: Sequence[Sequence]) -> list:
    """Coefficients [c_0, ..., c_n] of det(t I - a), c_n = 1 (Faddeev-LeVerrier).

    Rows of `a` are scanned sparsely, which keeps ad-matrices cheap.
    """
    n = len(a)
    sparse = [[(k, x) for k, x in enumerate(row) if not _is_zero(x)] for row in a]
    coeffs: list[Any] = [0] * (n + 1)
    coeffs[n] = Q(1)
    m: Matrix = [[Q(0)] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[0] * n for _ in range(n)]
        for i in range(n):
            row = am[i]
            for j, x in sparse[i]:
                mj = m[j]
                for col in range(n):
                    y = mj[col]
                    if not _is_zero(y):
                        row[col] = row[col] + x * y
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            am[i][i] = am[i][i] + c_prev
        m = am
        # c_{n-k} = -tr(A M_k) / k
        tr = 0
        for i in range(n):
            for j, x in sparse[i]:
                y = m[j][i]
                if not _is_zero(y):
                    tr = tr + x * y
        coeffs[n - k] = -tr * Q(1, k)
    return coeffs
