"""Hankel matrices over exact rationals and exact determinants.

Two independent determinant algorithms are provided so results can be
cross-checked end to end: fraction-free Bareiss elimination (the primary
route, with denominators cleared row by row first) and Dodgson condensation
(the independent route, falling back to cofactor expansion whenever an
interior minor vanishes).  A plain cofactor expansion is exposed as well; it
is the base-case oracle the other two are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .series import TruncatedSeries, as_fraction

BAREISS = "bareiss"
CONDENSATION = "condensation"
COFACTOR = "cofactor"

DET_METHODS = (BAREISS, CONDENSATION, COFACTOR)


@dataclass(frozen=True)
class HankelMatrix:
    """An n x n matrix with entries[i][j] = q_{i+j}, constant anti-diagonals."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class HankelResult:
    """One determinant evaluation: dimension, exact value, algorithm tag."""

    n: int
    det: Fraction
    method: str


def build_hankel(q: TruncatedSeries, n: int) -> HankelMatrix:
    """The Hankel matrix H_n of the coefficient sequence of q.

    H_n consumes q_0 .. q_{2n-2}, so q must carry order >= 2n - 2; anything
    shorter is rejected rather than zero-padded.  n = 0 gives the empty
    matrix, whose determinant is 1 by convention.
    """
    if n < 0:
        raise ValueError("matrix dimension must be nonnegative")
    if n > 0 and q.order < 2 * n - 2:
        raise ValueError(
            f"series order too low for H_{n}: need {2 * n - 2}, have {q.order}"
        )
    cs = q.coeffs
    return HankelMatrix(
        tuple(tuple(cs[i + j] for j in range(n)) for i in range(n))
    )


def _as_rows(m) -> list[list[Fraction]]:
    rows = m.entries if isinstance(m, HankelMatrix) else m
    grid = [[as_fraction(v) for v in row] for row in rows]
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("matrix is not square")
    return grid


def det_bareiss(m) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination.

    Each row is scaled to integers by the lcm of its denominators (the product
    of the scalings is divided out at the end), then eliminated with the
    Bareiss recurrence, whose intermediate entries are exact minors and whose
    divisions are exact.  A zero pivot is repaired by a sign-tracked row swap;
    if no pivot exists the determinant is 0.
    """
    grid = _as_rows(m)
    n = len(grid)
    if n == 0:
        return Fraction(1)

    scale = 1
    rows: list[list[int]] = []
    for row in grid:
        row_lcm = lcm(*(c.denominator for c in row))
        scale *= row_lcm
        rows.append([int(c * row_lcm) for c in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def det_cofactor(m) -> Fraction:
    """Exact determinant by first-row cofactor expansion (O(n!), desk scale)."""
    grid = _as_rows(m)

    def expand(rows: list[list[Fraction]]) -> Fraction:
        n = len(rows)
        if n == 0:
            return Fraction(1)
        if n == 1:
            return rows[0][0]
        if n == 2:
            return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        total = Fraction(0)
        for j in range(n):
            if rows[0][j] == 0:
                continue
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            term = rows[0][j] * expand(minor)
            total += term if j % 2 == 0 else -term
        return total

    return expand(grid)


class _ZeroInteriorMinor(Exception):
    pass


def _condense(grid: list[list[Fraction]]) -> Fraction:
    n = len(grid)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return grid[0][0]
    inner = grid
    outer: list[list[Fraction]] | None = None
    while len(inner) > 1:
        k = len(inner)
        nxt = [
            [
                inner[i][j] * inner[i + 1][j + 1] - inner[i][j + 1] * inner[i + 1][j]
                for j in range(k - 1)
            ]
            for i in range(k - 1)
        ]
        if outer is not None:
            for i in range(k - 1):
                for j in range(k - 1):
                    div = outer[i + 1][j + 1]
                    if div == 0:
                        raise _ZeroInteriorMinor
                    nxt[i][j] /= div
        outer = inner
        inner = nxt
    return inner[0][0]


def det_condensation(m) -> HankelResult:
    """Exact determinant by Dodgson condensation.

    Condensation repeatedly contracts the matrix of connected 2x2 minors,
    dividing by the interior of the matrix two generations back; it breaks
    down when such an interior entry is 0.  In that case the whole instance
    is recomputed by cofactor expansion and the result tagged "cofactor"
    (exact arithmetic leaves no room for perturbation tricks).
    """
    grid = _as_rows(m)
    try:
        return HankelResult(len(grid), _condense(grid), CONDENSATION)
    except _ZeroInteriorMinor:
        return HankelResult(len(grid), det_cofactor(grid), COFACTOR)


def det_sequence(
    q: TruncatedSeries, n_max: int, method: str = BAREISS
) -> list[HankelResult]:
    """The Hankel determinants s_0 .. s_{n_max} of q, each one exact.

    s_0 = 1 by the empty-matrix convention.  The series must carry at least
    2*n_max - 2 coefficient orders.
    """
    if method not in DET_METHODS:
        raise ValueError(f"unknown determinant method: {method!r}")
    results = []
    for n in range(n_max + 1):
        matrix = build_hankel(q, n)
        if method == BAREISS:
            results.append(HankelResult(n, det_bareiss(matrix), BAREISS))
        elif method == COFACTOR:
            results.append(HankelResult(n, det_cofactor(matrix), COFACTOR))
        else:
            results.append(det_condensation(matrix))
    return results
