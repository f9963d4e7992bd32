"""Small exact linear algebra over the rationals (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def _echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(_echelon(a)[1]) if a and a[0] else 0


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : a v = 0}."""
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    m, pivots = _echelon(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> list[Fraction] | None:
    """One solution of a x = b, or None when inconsistent."""
    cols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    m, pivots = _echelon(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, p in zip(m, pivots):
        x[p] = row[cols]
    return x


def det(a: Matrix) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def inertia(s: Matrix, order: Sequence[int] | None = None) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix.

    Symmetric elimination with full pivoting: the largest diagonal entry
    in absolute value is taken first, ties going to the earliest index in
    ``order``.  When every remaining diagonal entry vanishes, a 2x2 block
    around the largest off-diagonal entry contributes one sign of each kind.
    """
    n = len(s)
    a = [list(map(Fraction, row)) for row in s]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(order) if order is not None else list(range(n))
    if sorted(active) != list(range(n)):
        raise ValueError("order must be a permutation of the indices")
    pos = neg = 0
    while active:
        best = None
        for i in active:
            if a[i][i] and (best is None or abs(a[i][i]) > abs(a[best][best])):
                best = i
        if best is not None:
            d = a[best][best]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(best)
            for i in active:
                f = a[i][best] / d
                if f:
                    for j in active:
                        a[i][j] -= f * a[best][j]
            continue
        pair = None
        for x, i in enumerate(active):
            for j in active[x + 1:]:
                if a[i][j] and (pair is None or abs(a[i][j]) > abs(a[pair[0]][pair[1]])):
                    pair = (i, j)
        if pair is None:
            break
        i, j = pair
        off = a[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        # Schur complement of the block [[0, off], [off, 0]].
        for r in active:
            for c in active:
                a[r][c] -= (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / off
    return pos, neg, n - pos - neg
