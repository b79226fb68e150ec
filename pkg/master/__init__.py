"""QCG-CVRP - Master Problem Package"""

from .routes import (
    Route, RouteSet, DualSolution, RmpLpSolution, RmpIntSolution,
    canonical_sequence, tour_distance,
)
from .simplex import CoveringLpResult, solve_covering_lp
from .partition import solve_set_partition
from .rmp import initial_route_set, solve_rmp_lp, solve_rmp_integer

__all__ = [
    "Route", "RouteSet", "DualSolution", "RmpLpSolution", "RmpIntSolution",
    "canonical_sequence", "tour_distance",
    "CoveringLpResult", "solve_covering_lp", "solve_set_partition",
    "initial_route_set", "solve_rmp_lp", "solve_rmp_integer",
]
