"""Exact linear algebra over the rationals.

Rank decisions, kernels and solves go through a fraction-free (Bareiss)
row echelon form on integer-scaled rows; back-substitution is done with
:class:`fractions.Fraction`.  Matrices are plain sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Row = Sequence[Fraction]


class LinearAlgebraError(ValueError):
    """Raised when a linear system has no solution or no unique solution."""


class InconsistentSystem(LinearAlgebraError):
    pass


class SingularSystem(LinearAlgebraError):
    pass


def _integer_row(row: Row) -> list[int]:
    den = _denominator_lcm(row)
    return [int(Fraction(x) * den) for x in row]


def row_echelon(rows: Sequence[Row], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Each row is first scaled to integers, then Bareiss elimination is run
    (every division is exact).  Returns the nonzero echelon rows and the
    pivot column of each.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    a = [_integer_row(r) for r in rows]
    m = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            # entries left of c are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    return len(row_echelon(rows, ncols)[1]) if rows else 0


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int,
                     fixed: dict[int, Fraction], rhs: list[Fraction] | None = None) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for c, v in fixed.items():
        x[c] = v
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = Fraction(rhs[r]) if rhs is not None else Fraction(0)
        row = ech[r]
        for j in range(c + 1, ncols):
            if row[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def nullspace(rows: Sequence[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : M x = 0}``, one vector per free column (free entry 1)."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    ech, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        fixed = {g: Fraction(int(g == f)) for g in free}
        basis.append(tuple(_back_substitute(ech, pivots, ncols, fixed)))
    return basis


def solve(rows: Sequence[Row], rhs: Sequence[Fraction], ncols: int | None = None) -> tuple[Fraction, ...]:
    """Unique solution of ``M x = b``.

    Raises :class:`InconsistentSystem` when there is no solution and
    :class:`SingularSystem` when the solution is not unique.
    """
    if ncols is None:
        ncols = len(rows[0])
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    ech, pivots = row_echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise InconsistentSystem("linear system has no solution")
    if len(pivots) < ncols:
        raise SingularSystem(f"linear system is underdetermined (rank {len(pivots)} < {ncols})")
    b = [Fraction(row[ncols]) for row in ech]
    return tuple(_back_substitute(ech, pivots, ncols, {}, b))


def transpose(m: Sequence[Row]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*m)]


def coordinates(basis: Sequence[Row], v: Row) -> tuple[Fraction, ...] | None:
    """Coefficients of ``v`` in a linearly independent ``basis``, or None."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    try:
        return solve(transpose(basis), list(v), len(basis))
    except InconsistentSystem:
        return None


def in_span(vectors: Sequence[Row], v: Row) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors) + [v]) == rank(vectors)


def _denominator_lcm(row: Row) -> int:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return den


def determinant(m: Sequence[Row]) -> Fraction:
    """Bareiss determinant; rows are scaled to integers first."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for row in m:
        d = _denominator_lcm(row)
        scale *= d
        a.append([int(Fraction(x) * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def inverse(m: Sequence[Row]) -> list[list[Fraction]]:
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(m, e, n))
    return transpose(cols)
