"""Exact linear algebra over Gaussian rationals.

Row vectors are stored as lists of integer pairs ``(re, im)`` with any
common denominator already cleared; elimination is fraction-free (the
update ``row' = pivot*row - entry*pivot_row`` stays integral), so ranks
and memberships carry no rounding or pivot-threshold questions.

Also a few small helpers for dense matrices of Scalars (used for the
orthogonal-algebra relation checks and the degree-zero projection).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exactnum import GaussRat, Scalar


# ---------------------------------------------------------------------------
# integer-pair rows


def row_from_gaussrats(vals) -> list:
    """Clear denominators of a GaussRat sequence into an int-pair row."""
    den = 1
    for g in vals:
        den = den // gcd(den, g.re.denominator) * g.re.denominator
        den = den // gcd(den, g.im.denominator) * g.im.denominator
    return [(int(g.re * den), int(g.im * den)) for g in vals]


def _normalize_row(row: list) -> list:
    g = 0
    for r, m in row:
        g = gcd(g, gcd(r, m))
        if g == 1:
            return row
    if g > 1:
        return [(r // g, m // g) for r, m in row]
    return row


def row_is_zero(row) -> bool:
    return all(r == 0 and m == 0 for r, m in row)


class Echelon:
    """Growing row-echelon basis with exact membership tests.

    ``pivot_limit`` (if set) restricts pivot columns to ``< pivot_limit``;
    inserting a row whose leading nonzero lies at or beyond the limit is
    reported as inconsistent rather than stored.  This turns the same
    machinery into an intertwining-map checker: insert ``[source | image]``
    rows with the limit at the source width.
    """

    def __init__(self, ncols: int, pivot_limit: int | None = None):
        self.ncols = ncols
        self.pivot_limit = ncols if pivot_limit is None else pivot_limit
        self.rows: dict[int, list] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: list) -> list:
        row = list(row)
        for col in sorted(self.rows):
            rv = row[col]
            if rv == (0, 0):
                continue
            prow = self.rows[col]
            pv = prow[col]
            a, b = pv
            c, d = rv
            row = [(a * x - b * y - (c * px - d * py),
                    a * y + b * x - (c * py + d * px))
                   for (x, y), (px, py) in zip(row, prow)]
            row = _normalize_row(row)
        return row

    def insert(self, row: list) -> str:
        """Reduce and store.  Returns one of:

        * ``"new"`` -- increased the rank;
        * ``"dependent"`` -- already in the span (zero residual);
        * ``"inconsistent"`` -- residual is zero on all pivot-eligible
          columns but not beyond the limit.
        """
        res = self.reduce(row)
        pivot = None
        for col, v in enumerate(res):
            if v != (0, 0):
                pivot = col
                break
        if pivot is None:
            return "dependent"
        if pivot >= self.pivot_limit:
            return "inconsistent"
        self.rows[pivot] = _normalize_row(res)
        return "new"

    def contains(self, row: list) -> bool:
        return row_is_zero(self.reduce(row))

    def basis(self) -> list:
        return [self.rows[c] for c in sorted(self.rows)]


# ---------------------------------------------------------------------------
# dense Scalar matrices


def mat_zeros(params, n: int, m: int | None = None):
    m = n if m is None else m
    return [[Scalar.zero(params) for _ in range(m)] for _ in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for s in range(1, k):
                acc = acc + A[i][s] * B[s][j]
            row.append(acc)
        out.append(row)
    return out


def mat_commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def mat_is_zero(A) -> bool:
    return all(a.is_zero() for row in A for a in row)


def mat_eq(A, B) -> bool:
    return mat_is_zero(mat_sub(A, B))


def mat_apply(A, col_index: int):
    """Column ``col_index`` of A as a list (action on a basis vector)."""
    return [row[col_index] for row in A]
