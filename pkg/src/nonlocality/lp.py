"""Exact rational LP used to test membership in the local polytope.

The only problem solved here: given column vectors ``x_g`` (deterministic
grid indicator tables) and a target ``p``, compute

    min  || sum_g w_g x_g  -  p ||_1   over  w_g >= 0,  sum_g w_g = 1

with dense-tableau simplex over ``fractions.Fraction``.  The minimum is 0
exactly when the target is a convex combination of the columns.  Bland's
rule prevents cycling; problem sizes stay at desk scale so no external
solver is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def _pivot(rows: list, z: list, basis: list, r: int, c: int) -> None:
    pivot = rows[r][c]
    inv = ONE / pivot
    rows[r] = [value * inv for value in rows[r]]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            factor = row[c]
            rows[i] = [value - factor * pvalue for value, pvalue in zip(row, prow)]
    if z[c] != 0:
        factor = z[c]
        for j in range(len(z)):
            z[j] -= factor * prow[j]
    basis[r] = c


def _minimize(rows: list, basis: list, costs: list) -> Fraction:
    """Minimize costs.x over the tableau's feasible region (Bland's rule).

    ``rows`` carry the constraint matrix with the right-hand side as the
    last column; ``basis`` columns must be identity on entry.
    """
    ncols = len(rows[0]) - 1
    # Reduced-cost row (negated objective): z_j = c_j - c_B . B^-1 A_j
    z = list(costs) + [ZERO]
    for i, b in enumerate(basis):
        if costs[b] != 0:
            factor = costs[b]
            z = [zv - factor * rv for zv, rv in zip(z, rows[i])]
    while True:
        enter = next((j for j in range(ncols) if z[j] < 0), None)
        if enter is None:
            return -z[-1]
        leave = None
        best = None
        for i, row in enumerate(rows):
            coeff = row[enter]
            if coeff > 0:
                ratio = row[-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("objective unbounded below; malformed tableau")
        _pivot(rows, z, basis, leave, enter)


def min_l1_mixture_deviation(
    columns: Sequence[Sequence], target: Sequence
) -> Fraction:
    """Exact minimum total absolute deviation of any convex combination of
    ``columns`` from ``target``.  All entries are coerced to Fraction."""
    if not columns:
        raise ValueError("need at least one column")
    n_rows = len(target)
    n_cols = len(columns)
    for column in columns:
        if len(column) != n_rows:
            raise ValueError("column length does not match target")
    target = [Fraction(value) for value in target]
    if any(value < 0 for value in target):
        raise ValueError("target entries must be non-negative")

    # Layout: [w_0..w_{G-1} | u_0..u_{R-1} | v_0..v_{R-1} | rhs]
    # Entry row e:  sum_g w_g x_g[e] + u_e - v_e = p_e
    # Weight row:   sum_g w_g = 1
    width = n_cols + 2 * n_rows + 1
    rows = []
    for e in range(n_rows):
        row = [Fraction(column[e]) for column in columns]
        row += [ONE if j == e else ZERO for j in range(n_rows)]
        row += [-ONE if j == e else ZERO for j in range(n_rows)]
        row.append(target[e])
        rows.append(row)
    weight_row = [ONE] * n_cols + [ZERO] * (2 * n_rows) + [ONE]
    rows.append(weight_row)

    basis = [n_cols + e for e in range(n_rows)] + [0]
    # Make w_0 basic in the weight row, then repair any entry row driven
    # negative by flipping its sign so v_e (coefficient +1) is basic there.
    costs_phase0 = [ZERO] * (width - 1)
    z0 = [ZERO] * width
    _pivot(rows, z0, basis, n_rows, 0)
    del costs_phase0
    for e in range(n_rows):
        if rows[e][-1] < 0:
            rows[e] = [-value for value in rows[e]]
            basis[e] = n_cols + n_rows + e

    costs = [ZERO] * n_cols + [ONE] * (2 * n_rows)
    return _minimize(rows, basis, costs)


def is_convex_combination(
    columns: Sequence[Sequence], target: Sequence, tol: Fraction = ZERO
) -> bool:
    """Whether the target is within total deviation ``tol`` of the hull."""
    return min_l1_mixture_deviation(columns, target) <= tol
