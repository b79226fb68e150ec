"""
QCG-CVRP - Set-Partitioning Solver

Exact minimum-cost exact cover by depth-first search: always branch on the
lowest-index uncovered row, trying the columns that cover it in index order.
Small column pools are enumerated exhaustively; larger pools prune with a
cheap per-row bound and then the covering-LP bound over the still-uncovered
rows.
"""

from typing import List, Optional, Tuple

import numpy as np

from utils.config import EXHAUSTIVE_PARTITION_MAX_ROUTES, LP_TOL
from utils.errors import InfeasibleError
from utils.logging_config import get_logger

from .simplex import solve_covering_lp

logger = get_logger("master.partition")

_IMPROVEMENT_TOL = 1e-12


class _PartitionSearch:
    """DFS state for one solve."""

    def __init__(self, costs: np.ndarray, coverage: np.ndarray, lp_tol: float, exhaustive: bool):
        self.costs = costs
        self.coverage = coverage
        self.lp_tol = lp_tol
        self.exhaustive = exhaustive
        m, n = coverage.shape
        self.masks = [
            int(sum(1 << int(r) for r in np.flatnonzero(coverage[:, j] > 0.5))) for j in range(n)
        ]
        self.by_row = [
            [j for j in range(n) if self.masks[j] >> r & 1] for r in range(m)
        ]
        self.best_cost = np.inf
        self.best: Optional[List[int]] = None
        self.nodes = 0
        self.lp_bounds = 0

    def _lower_bound(self, uncovered: int) -> float:
        """Covering-LP bound over uncovered rows using columns inside them."""
        rows = [r for r in range(len(self.by_row)) if uncovered >> r & 1]
        cols = [j for j, mask in enumerate(self.masks) if mask and mask & ~uncovered == 0]
        if not cols:
            return np.inf
        sub = self.coverage[np.ix_(rows, cols)]
        if np.any(sub.sum(axis=1) == 0):
            return np.inf
        self.lp_bounds += 1
        return solve_covering_lp(self.costs[cols], sub, tol=self.lp_tol).objective

    def _cheap_bound(self, uncovered: int) -> float:
        total = 0.0
        for r, cols in enumerate(self.by_row):
            if not uncovered >> r & 1:
                continue
            shares = [
                self.costs[j] / bin(self.masks[j]).count("1")
                for j in cols if self.masks[j] & ~uncovered == 0
            ]
            if not shares:
                return np.inf
            total += min(shares)
        return total

    def search(self, uncovered: int, chosen: List[int], cost: float) -> None:
        self.nodes += 1
        if uncovered == 0:
            if cost < self.best_cost - _IMPROVEMENT_TOL:
                self.best_cost = cost
                self.best = list(chosen)
            return
        if not self.exhaustive:
            if cost + self._cheap_bound(uncovered) >= self.best_cost - _IMPROVEMENT_TOL:
                return
            if cost + self._lower_bound(uncovered) >= self.best_cost - _IMPROVEMENT_TOL:
                return

        row = (uncovered & -uncovered).bit_length() - 1
        for j in self.by_row[row]:
            if self.masks[j] & ~uncovered:
                continue
            chosen.append(j)
            self.search(uncovered & ~self.masks[j], chosen, cost + self.costs[j])
            chosen.pop()


def solve_set_partition(
    costs: np.ndarray,
    coverage: np.ndarray,
    lp_tol: float = LP_TOL,
    exhaustive_max: int = EXHAUSTIVE_PARTITION_MAX_ROUTES,
) -> Tuple[List[int], float]:
    """
    Minimum-cost selection of columns covering every row exactly once.

    Parameters
    ----------
    costs : np.ndarray
        Column costs (length n, nonnegative).
    coverage : np.ndarray
        0/1 matrix (m x n).
    lp_tol : float
        Tolerance forwarded to the LP bound.
    exhaustive_max : int
        Column count up to which every exact cover is enumerated.

    Returns
    -------
    Tuple[List[int], float]
        Selected column indices (ascending) and total cost.

    Raises
    ------
    InfeasibleError
        If no exact cover exists.
    """
    costs = np.asarray(costs, dtype=np.float64)
    coverage = np.asarray(coverage, dtype=np.float64)
    m = coverage.shape[0] if coverage.ndim == 2 else 0
    if m == 0:
        return [], 0.0

    exhaustive = costs.shape[0] <= exhaustive_max
    search = _PartitionSearch(costs, coverage, lp_tol, exhaustive)
    search.search((1 << m) - 1, [], 0.0)
    if search.best is None:
        raise InfeasibleError("no exact cover of the customers by the given routes")

    logger.debug(
        "set partition: %d columns, %s search, %d nodes, %d LP bounds, cost %.9f",
        costs.shape[0], "exhaustive" if exhaustive else "bounded",
        search.nodes, search.lp_bounds, search.best_cost,
    )
    return sorted(search.best), float(search.best_cost)
