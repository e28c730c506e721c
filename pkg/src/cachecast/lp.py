"""Exact linear programming over rationals.

A deliberately small dense-tableau simplex for the region certification work:
maximize c.x subject to A x <= b and x >= 0, with every entry a
fractions.Fraction.  Dimensions in this package stay below ~25 variables and
~30 rows, so a two-phase tableau with Bland's rule (anti-cycling) is both fast
enough and exactly correct -- no tolerances anywhere.

The solver reports one of three statuses: "optimal" (with value and a
maximizer), "unbounded", or "infeasible".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            factor = r[col]
            tab[i] = [v - factor * p for v, p in zip(r, tab[row])]
    basis[row] = col


def _run_simplex(tab: list[list[Fraction]], basis: list[int], n_enterable: int) -> str:
    """Pivot until the (maximization) objective row has no negative entry.

    The objective row is tab[-1]; the last column is the rhs.  Only the first
    `n_enterable` columns may enter the basis (this keeps artificials out
    during phase 1).  Bland's rule throughout: entering column is the
    lowest-index negative reduced cost, leaving row is the lowest-index basic
    variable among the minimum-ratio rows.
    """
    m = len(tab) - 1
    while True:
        col = next((j for j in range(n_enterable) if tab[-1][j] < 0), None)
        if col is None:
            return OPTIMAL
        best_ratio = None
        row = -1
        for i in range(m):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[row])
                ):
                    best_ratio = ratio
                    row = i
        if row < 0:
            return UNBOUNDED
        _pivot(tab, basis, row, col)


def solve_max(
    objective: Sequence[Fraction],
    rows: Sequence[tuple[Sequence[Fraction], Fraction]],
) -> LpResult:
    """Maximize objective . x subject to the rows and x >= 0."""
    n = len(objective)
    m = len(rows)
    obj = [Fraction(c) for c in objective]

    neg_rows = [i for i, (_, rhs) in enumerate(rows) if rhs < 0]
    n_art = len(neg_rows)
    art_col = {i: n + m + t for t, i in enumerate(neg_rows)}
    ncols = n + m + n_art + 1

    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, rhs) in enumerate(rows):
        row = [Fraction(c) for c in coeffs] + [_ZERO] * (m + n_art) + [Fraction(rhs)]
        row[n + i] = _ONE  # slack
        if rhs < 0:
            row = [-v for v in row]
            row[art_col[i]] = _ONE
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        tab.append(row)

    if n_art:
        # phase 1: maximize -(sum of artificials)
        phase1 = [_ZERO] * ncols
        for j in art_col.values():
            phase1[j] = _ONE
        # express in terms of the current basis (artificials are basic)
        for i, b in enumerate(basis):
            if phase1[b] != 0:
                factor = phase1[b]
                phase1 = [v - factor * t for v, t in zip(phase1, tab[i])]
        tab.append(phase1)
        status = _run_simplex(tab, basis, n + m)
        assert status == OPTIMAL  # phase-1 objective is bounded below by 0
        if tab[-1][-1] != 0:
            return LpResult(INFEASIBLE)
        tab.pop()
        # drive any degenerate artificial out of the basis
        for i, b in enumerate(basis):
            if b >= n + m:
                col = next(
                    (j for j in range(n + m) if tab[i][j] != 0),
                    None,
                )
                if col is not None:
                    _pivot(tab, basis, i, col)
        # drop rows that stayed artificial (redundant equalities)
        keep = [i for i, b in enumerate(basis) if b < n + m]
        tab = [tab[i] for i in keep]
        basis = [basis[i] for i in keep]
        tab = [r[: n + m] + [r[-1]] for r in tab]
        ncols = n + m + 1

    obj_row = [-c for c in obj] + [_ZERO] * (ncols - n)
    for i, b in enumerate(basis):
        if obj_row[b] != 0:
            factor = obj_row[b]
            obj_row = [v - factor * t for v, t in zip(obj_row, tab[i])]
    tab.append(obj_row)

    status = _run_simplex(tab, basis, ncols - 1)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)
    point = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] = tab[i][-1]
    return LpResult(OPTIMAL, value=tab[-1][-1], point=tuple(point))


def solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """Solve a square rational linear system exactly; None if singular."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pval = aug[col][col]
        aug[col] = [v / pval for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(n)]
