"""Exact linear algebra over the rationals.

Determinants and kernels are computed by fraction-free (Bareiss)
elimination on denominator-cleared integer matrices; rank decisions are
therefore exact, which is what the degenerate Verma-module weights
require.  A small incremental row-space class supports span membership
and complement selection, used by the singular-vector filter.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def _int_rows(matrix: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (kernel-preserving)."""
    out = []
    for row in matrix:
        scale = lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * scale) for f in row])
    return out


def _row_scales(matrix: Matrix) -> list[int]:
    return [lcm(*(f.denominator for f in row)) if row else 1 for row in matrix]


def ff_echelon(m: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon, pivot_columns, sign).  All divisions performed are
    exact; entries stay integers of controlled size.
    """
    m = [row[:] for row in m]
    if not m:
        return m, [], 1
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for col in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        for i in range(r + 1, n_rows):
            if all(x == 0 for x in m[i]):
                continue
            head = m[i][col]
            for c in range(col + 1, n_cols):
                m[i][c] = (m[r][col] * m[i][c] - head * m[r][c]) // prev
            m[i][col] = 0
        prev = m[r][col]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return m, pivots, sign


def det(matrix: Matrix) -> Fraction:
    """Exact determinant of a square matrix of Fractions."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    scales = _row_scales(matrix)
    ints = [[int(f * s) for f in row] for row, s in zip(matrix, scales)]
    ech, pivots, sign = ff_echelon(ints)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(sign * ech[n - 1][n - 1])
    for s in scales:
        d /= s
    return d


def nullspace(matrix: Matrix, n_cols: int | None = None) -> list[Vector]:
    """Basis of {v : M v = 0}, echelon-canonical.

    Each basis vector carries a 1 in "its" free column and 0 in the other
    free columns, so the result is deterministic.
    """
    if not matrix:
        if n_cols is None:
            raise ValueError("need n_cols for an empty matrix")
        return [[Fraction(i == j) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(matrix[0])
    ech, pivots, _ = ff_echelon(_int_rows(matrix))
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v: Vector = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            s = sum((Fraction(ech[i][c]) * v[c] for c in range(p + 1, n_cols)), Fraction(0))
            v[p] = -s / ech[i][p]
        basis.append(v)
    return basis


def rank(matrix: Matrix) -> int:
    if not matrix:
        return 0
    _, pivots, _ = ff_echelon(_int_rows(matrix))
    return len(pivots)


class RowSpace:
    """Incrementally built row space with exact membership tests."""

    def __init__(self):
        self._rows: list[tuple[int, Vector]] = []  # (pivot index, pivot-normalized row)

    def reduce(self, vec: Vector) -> Vector:
        v = list(vec)
        for p, row in self._rows:
            if v[p] != 0:
                coef = v[p]
                v = [a - coef * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Vector) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def add(self, vec: Vector) -> bool:
        """Insert vec's residual; True if it enlarged the space."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        piv = v[p]
        self._rows.append((p, [x / piv for x in v]))
        self._rows.sort(key=lambda t: t[0])
        return True

    @property
    def dim(self) -> int:
        return len(self._rows)
