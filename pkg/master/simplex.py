"""
QCG-CVRP - Covering LP Simplex

Two-phase primal simplex on the covering form

    min  c^T x   s.t.  A x >= b,  x >= 0      (b >= 0)

using a dense tableau and Bland's rule (lowest-index entering column,
lowest-index leaving basic variable on ratio ties). The dual prices of the
covering rows are read off the reduced costs of the surplus columns at the
optimal basis.

Tableau column layout: [x_0..x_{n-1} | s_0..s_{m-1} | a_0..a_{m-1} | rhs]
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.config import LP_TOL
from utils.errors import InfeasibleError, ParameterError
from utils.logging_config import get_logger

logger = get_logger("master.simplex")

# Phase-I residual above which the covering system is declared infeasible
PHASE1_FEASIBILITY_TOL = 1e-7


@dataclass
class CoveringLpResult:
    """Optimal primal/dual pair of a covering LP."""

    x: np.ndarray
    duals: np.ndarray
    objective: float
    pivots: int


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]


def _reduced_costs(tableau: np.ndarray, basis: np.ndarray, cost: np.ndarray) -> np.ndarray:
    return cost - cost[basis] @ tableau[:, :-1]


def _run_simplex(
    tableau: np.ndarray,
    basis: np.ndarray,
    cost: np.ndarray,
    enterable: np.ndarray,
    tol: float,
    max_pivots: int,
) -> int:
    """Pivot to optimality in place; returns the pivot count."""
    pivots = 0
    while True:
        reduced = _reduced_costs(tableau, basis, cost)
        candidates = np.flatnonzero(enterable & (reduced < -tol))
        if candidates.size == 0:
            return pivots
        col = int(candidates[0])

        column = tableau[:, col]
        rows = np.flatnonzero(column > tol)
        if rows.size == 0:
            raise ParameterError("covering LP is unbounded (negative cost column)")
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tol]
        row = int(tied[np.argmin(basis[tied])])

        _pivot(tableau, row, col)
        basis[row] = col
        pivots += 1
        logger.debug("pivot %d: enter %d leave row %d", pivots, col, row)
        if pivots > max_pivots:
            raise ParameterError(f"simplex exceeded {max_pivots} pivots")


def solve_covering_lp(
    costs: np.ndarray,
    coverage: np.ndarray,
    rhs: Optional[np.ndarray] = None,
    tol: float = LP_TOL,
) -> CoveringLpResult:
    """
    Solve ``min c^T x  s.t.  A x >= b, x >= 0``.

    Parameters
    ----------
    costs : np.ndarray
        Column costs c (length n).
    coverage : np.ndarray
        Constraint matrix A (m x n).
    rhs : np.ndarray, optional
        Right-hand side b >= 0; defaults to all ones.
    tol : float
        Pivoting and feasibility tolerance.

    Returns
    -------
    CoveringLpResult
        Primal x, row duals y (y >= 0) and the optimal objective.

    Raises
    ------
    InfeasibleError
        If some row has no positive coefficient, or Phase I cannot reach
        feasibility. ``customer`` holds the offending row index.
    """
    costs = np.asarray(costs, dtype=np.float64)
    a = np.asarray(coverage, dtype=np.float64)
    m = a.shape[0] if a.ndim == 2 else 0
    n = costs.shape[0]
    if m == 0:
        return CoveringLpResult(x=np.zeros(n), duals=np.zeros(0), objective=0.0, pivots=0)
    if a.shape != (m, n):
        raise ParameterError(f"coverage shape {a.shape} does not match {n} costs")
    b = np.ones(m) if rhs is None else np.asarray(rhs, dtype=np.float64)

    for row in range(m):
        if not np.any(a[row] > tol) and b[row] > tol:
            raise InfeasibleError(f"row {row} cannot be covered", customer=row)

    width = n + 2 * m
    tableau = np.zeros((m, width + 1))
    tableau[:, :n] = a
    tableau[:, n:n + m] = -np.eye(m)
    tableau[:, n + m:width] = np.eye(m)
    tableau[:, -1] = b
    basis = np.arange(n + m, width)
    max_pivots = 50 * (width + 1)

    # Phase I: minimise the sum of artificials
    phase1_cost = np.zeros(width)
    phase1_cost[n + m:] = 1.0
    pivots = _run_simplex(
        tableau, basis, phase1_cost, np.ones(width, dtype=bool), tol, max_pivots
    )
    residual = float(tableau[basis >= n + m, -1].sum())
    if residual > PHASE1_FEASIBILITY_TOL:
        raise InfeasibleError(f"covering LP infeasible (phase I residual {residual:.3e})")

    # Drive zero-level artificials out of the basis
    for row in range(m):
        if basis[row] >= n + m:
            nonzero = np.flatnonzero(np.abs(tableau[row, :n + m]) > tol)
            if nonzero.size:
                col = int(nonzero[0])
                _pivot(tableau, row, col)
                basis[row] = col
                pivots += 1

    # Phase II: original costs, artificials barred from entering
    phase2_cost = np.zeros(width)
    phase2_cost[:n] = costs
    enterable = np.ones(width, dtype=bool)
    enterable[n + m:] = False
    pivots += _run_simplex(tableau, basis, phase2_cost, enterable, tol, max_pivots)

    x = np.zeros(n)
    for row, var in enumerate(basis):
        if var < n:
            x[var] = tableau[row, -1]
    x[(x < 0.0) & (x > -tol)] = 0.0

    reduced = _reduced_costs(tableau, basis, phase2_cost)
    duals = reduced[n:n + m].copy()
    duals[(duals < 0.0) & (duals > -tol)] = 0.0

    objective = float(costs @ x)
    logger.debug("covering LP solved: m=%d n=%d obj=%.9f pivots=%d", m, n, objective, pivots)
    return CoveringLpResult(x=x, duals=duals, objective=objective, pivots=pivots)
