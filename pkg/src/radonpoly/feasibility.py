"""Dense phase-1 simplex feasibility for small equality systems with x >= 0.

Decides whether {x >= 0 : A x = b} is nonempty by minimizing the sum of
artificial variables.  The tableau arithmetic is generic: float64 for the
fast path and exact Fractions for the degenerate-margin fallback, with
Bland's rule throughout so the exact path provably terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["FeasibilityResult", "phase1_feasibility"]

_MAX_PIVOTS_FACTOR = 200


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    objective: float
    x: tuple | None
    exact: bool


def phase1_feasibility(rows, rhs, *, exact: bool = False,
                       zero_tol: float = 1e-11) -> FeasibilityResult:
    """Solve the phase-1 problem for A x = b, x >= 0.

    `rows` is a list of coefficient lists, `rhs` the right-hand sides; both
    are converted to Fractions when exact=True.  The returned objective is
    the residual infeasibility (0 when a feasible point exists); `x` carries
    a feasible point when one was found.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows) or len(rhs) != m:
        raise ValueError("ragged feasibility system")

    if exact:
        conv = lambda v: v if isinstance(v, Fraction) else Fraction(v)
        zero = Fraction(0)
        tol = Fraction(0)
    else:
        conv = float
        zero = 0.0
        tol = zero_tol

    # Tableau: columns 0..n-1 original, n..n+m-1 artificial, last column rhs.
    tab = []
    for i in range(m):
        row = [conv(v) for v in rows[i]]
        bi = conv(rhs[i])
        if bi < zero:
            row = [-v for v in row]
            bi = -bi
        row += [zero] * m
        row[n + i] = conv(1)
        row.append(bi)
        tab.append(row)
    basis = list(range(n, n + m))

    # Reduced-cost row for minimizing the artificial sum, canonicalized
    # against the artificial basis: cost_j = -sum_i tab[i][j].
    width = n + m + 1
    cost = [zero] * width
    for i in range(m):
        for j in range(width):
            cost[j] -= tab[i][j]
    for i in range(m):
        cost[n + i] = zero

    max_pivots = _MAX_PIVOTS_FACTOR * (n + m + 1)
    for _ in range(max_pivots):
        enter = -1
        for j in range(n + m):  # Bland: smallest eligible index
            if cost[j] < -tol:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > tol:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # Unbounded descent cannot happen for a phase-1 objective that is
            # bounded below by 0; treat as numerical breakdown.
            raise ArithmeticError("phase-1 ratio test failed on all rows")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != zero:
                f = tab[i][enter]
                tab[i] = [vi - f * vp for vi, vp in zip(tab[i], tab[leave])]
        if cost[enter] != zero:
            f = cost[enter]
            cost = [c - f * vp for c, vp in zip(cost, tab[leave])]
        basis[leave] = enter
    else:
        raise ArithmeticError("phase-1 simplex exceeded its pivot budget")

    objective = -cost[-1]
    if exact:
        feasible = objective == 0
        obj_out = float(objective)
    else:
        feasible = objective <= max(tol, 0.0)
        obj_out = max(float(objective), 0.0)

    x = None
    if feasible:
        sol = [zero] * n
        for i, bv in enumerate(basis):
            if bv < n:
                sol[bv] = tab[i][-1]
        x = tuple(sol)
    return FeasibilityResult(feasible, obj_out, x, exact)
