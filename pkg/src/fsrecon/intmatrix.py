"""Exact linear algebra over the integers and rationals.

Rank is computed by fraction-free (Bareiss) elimination, so every
intermediate value is an integer minor of the input matrix; nothing here
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix, exact.

    Uses Bareiss-style fraction-free elimination with column pivoting, so
    rank-deficient columns are skipped without losing exactness.
    """
    m = [list(row) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    rank = 0
    prev_pivot = 1
    for col in range(ncols):
        # smallest nonzero magnitude keeps the minors from ballooning
        pivot_row = None
        for r in range(rank, len(m)):
            v = m[r][col]
            if v != 0 and (pivot_row is None or abs(v) < abs(m[pivot_row][col])):
                pivot_row = r
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, len(m)):
            factor = m[r][col]
            row_r, row_p = m[r], m[rank]
            # the division is exact: every entry is a minor of the input
            m[r] = [_exact_div(row_r[j] * pivot - factor * row_p[j], prev_pivot) for j in range(ncols)]
        prev_pivot = pivot
        rank += 1
    return rank


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("fraction-free elimination lost exactness")
    return q


def solve_unique_rational(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Solve M x = b for a matrix with full column rank.

    Returns the unique rational solution, or None when the system is
    inconsistent.  Raises ValueError if the columns are dependent (the
    caller is expected to have checked the rank).
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if ncols == 0:
        return [] if all(b == 0 for b in rhs) else None
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix does not have full column rank")
        aug[rank], aug[pivot_row] = aug[pivot_row], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [v / pv for v in aug[rank]]
        for r in range(nrows):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, nrows):
        if aug[r][ncols] != 0:
            return None
    return [aug[i][ncols] for i in range(ncols)]
