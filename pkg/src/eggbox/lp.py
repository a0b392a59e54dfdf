"""Exact rational linear feasibility via phase-1 simplex with Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Vector = Sequence[Fraction]


def feasible_point(
    rows: Sequence[Vector], rhs: Vector
) -> Optional[list[Fraction]]:
    """An exact x >= 0 with ``rows . x = rhs``, or None when infeasible.

    Phase-1 simplex over Fractions; Bland's rule guarantees termination.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [list(map(Fraction, r)) for r in rows]
    b = [Fraction(v) for v in rhs]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # Tableau with artificial variables n..n+m-1; minimize their sum.
    width = n + m
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for j in range(n, width):
        cost[j] += Fraction(1)

    while True:
        enter = -1
        for j in range(width):
            if cost[j] < 0:
                enter = j
                break
        if enter == -1:
            break
        leave = -1
        best: Optional[Fraction] = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave == -1:
            return None  # unbounded phase-1 cannot happen; defensive
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter

    if -cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][width]
        elif T[i][width] != 0:
            return None  # artificial stuck at nonzero value
    return x


def convex_combination(
    points: Sequence[Vector], target: Vector
) -> Optional[list[Fraction]]:
    """Coefficients l >= 0, sum l = 1 with ``sum l_i points_i = target``."""
    if not points:
        return None
    dim = len(target)
    rows = [[Fraction(p[d]) for p in points] for d in range(dim)]
    rows.append([Fraction(1)] * len(points))
    rhs = [Fraction(t) for t in target] + [Fraction(1)]
    return feasible_point(rows, rhs)


def nonnegative_combination(
    points: Sequence[Vector], target: Vector
) -> Optional[list[Fraction]]:
    """Coefficients l >= 0 with ``sum l_i points_i = target``."""
    if not points:
        return None
    dim = len(target)
    rows = [[Fraction(p[d]) for p in points] for d in range(dim)]
    rhs = [Fraction(t) for t in target]
    return feasible_point(rows, rhs)
