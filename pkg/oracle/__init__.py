"""QCG-CVRP - Brute-Force Oracle Package"""

from .brute_force import (
    EnumeratedRoutes, enumerate_routes, exact_min_reduced_cost,
    rank_routes_by_reduced_cost, enumerate_sequences, complete_lp_objective, exact_cvrp,
)

__all__ = [
    "EnumeratedRoutes", "enumerate_routes", "exact_min_reduced_cost",
    "rank_routes_by_reduced_cost", "enumerate_sequences", "complete_lp_objective", "exact_cvrp",
]
