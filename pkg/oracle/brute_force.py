"""
QCG-CVRP - Brute-Force Oracles

Ground truth for small instances:
- every capacity-feasible route, each subset stored once in its
  distance-minimising visiting order
- exact pricing (minimum reduced cost over those routes)
- the exact CVRP optimum by a dynamic programme over customer subsets

The CVRP solve shares no code with the master problem's branch-and-bound.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

import numpy as np

from instance import Instance
from master import DualSolution, RmpIntSolution, Route, RouteSet, solve_rmp_lp
from utils.config import ORACLE_CVRP_MAX_LOCATIONS, ORACLE_ENUMERATION_MAX_LOCATIONS
from utils.errors import GuardError, ParameterError
from utils.logging_config import get_logger

logger = get_logger("oracle")


@dataclass(frozen=True)
class EnumeratedRoutes:
    """All feasible routes of an instance, one per customer subset."""

    instance: Instance
    routes: Tuple[Route, ...]

    def __len__(self) -> int:
        return len(self.routes)

    def __iter__(self):
        return iter(self.routes)

    def as_route_set(self) -> RouteSet:
        return RouteSet(self.routes)


def _guard(instance: Instance, limit: int, what: str) -> None:
    if instance.n_locations > limit:
        raise GuardError(
            f"{what} is limited to {limit} locations, instance has {instance.n_locations}"
        )


def _best_order(instance: Instance, subset: Tuple[int, ...]) -> Route:
    best: Optional[Route] = None
    for order in permutations(subset):
        if len(order) > 1 and order[0] > order[-1]:
            continue  # reversal of an order already tried
        route = Route.build(instance, order)
        if (
            best is None
            or route.distance < best.distance - 1e-12
            or (abs(route.distance - best.distance) <= 1e-12 and route.customers < best.customers)
        ):
            best = route
    return best


@lru_cache(maxsize=64)
def _enumerate_cached(instance: Instance) -> EnumeratedRoutes:
    routes: List[Route] = []
    customers = list(instance.customers)
    for size in range(1, len(customers) + 1):
        for subset in combinations(customers, size):
            if sum(instance.demands[c] for c in subset) > instance.capacity:
                continue
            routes.append(_best_order(instance, subset))
    logger.debug("Enumerated %d feasible routes over %d customers", len(routes), len(customers))
    return EnumeratedRoutes(instance=instance, routes=tuple(routes))


def enumerate_routes(instance: Instance) -> EnumeratedRoutes:
    """
    Every non-empty capacity-feasible customer subset, visited in its
    minimum-distance order (found by exhaustive permutation).

    Raises
    ------
    GuardError
        If the instance has more than 10 locations.
    """
    _guard(instance, ORACLE_ENUMERATION_MAX_LOCATIONS, "route enumeration")
    return _enumerate_cached(instance)


def _check_pricing_args(instance: Instance, duals: DualSolution, T: int) -> None:
    if T < 2:
        raise ParameterError(f"T must be >= 2, got {T}")
    if len(duals.y) != instance.n_locations:
        raise ParameterError(
            f"{len(duals.y)} dual values for {instance.n_locations} locations"
        )


def _pricing_key(route: Route, reduced_cost: float):
    return (reduced_cost, len(route.customers), route.customers)


def rank_routes_by_reduced_cost(
    instance: Instance, duals: DualSolution, T: int
) -> List[Tuple[Route, float]]:
    """
    Every route with at most T-1 customers and a negative reduced cost,
    most negative first (ties: fewer customers, then lexicographic).
    """
    _check_pricing_args(instance, duals, T)
    priced = [
        (route, route.reduced_cost(duals))
        for route in enumerate_routes(instance)
        if len(route.customers) <= T - 1
    ]
    negative = [(r, c) for r, c in priced if c < 0.0]
    negative.sort(key=lambda rc: _pricing_key(*rc))
    return negative


def exact_min_reduced_cost(
    instance: Instance, duals: DualSolution, T: int
) -> Tuple[Route, float]:
    """
    Minimum reduced cost over routes with at most T-1 customers and the
    empty route (reduced cost 0).

    Returns
    -------
    (Route, float)
        The minimising route (possibly ``Route.empty()``) and its reduced cost.
    """
    _check_pricing_args(instance, duals, T)
    best_route, best_cost = Route.empty(), 0.0
    for route in enumerate_routes(instance):
        if len(route.customers) > T - 1:
            continue
        cost = route.reduced_cost(duals)
        if _pricing_key(route, cost) < _pricing_key(best_route, best_cost):
            best_route, best_cost = route, cost
    return best_route, best_cost


def enumerate_sequences(
    instance: Instance, duals: DualSolution, T: int
) -> List[Tuple[Tuple[int, ...], float, float]]:
    """
    Every ordered sequence of distinct customers of length 0..T-1 within
    capacity, with its tour distance and reduced cost.

    This is the feasible set the pricing QUBO ranges over once depot slots
    are dropped; its minimum reduced cost equals that of
    ``exact_min_reduced_cost`` because route distances are order-minimised.
    """
    _check_pricing_args(instance, duals, T)
    _guard(instance, ORACLE_ENUMERATION_MAX_LOCATIONS, "sequence enumeration")
    dist = instance.dist
    out: List[Tuple[Tuple[int, ...], float, float]] = [((), 0.0, 0.0)]
    for length in range(1, min(T - 1, instance.n_customers) + 1):
        for seq in permutations(instance.customers, length):
            if sum(instance.demands[c] for c in seq) > instance.capacity:
                continue
            stops = (0, *seq, 0)
            distance = float(sum(dist[a, b] for a, b in zip(stops[:-1], stops[1:])))
            out.append((seq, distance, distance - float(sum(duals.y[c] for c in seq))))
    return out


def complete_lp_objective(instance: Instance) -> float:
    """LP optimum of the master problem over the complete route set."""
    return solve_rmp_lp(enumerate_routes(instance).as_route_set(), instance).objective


def exact_cvrp(instance: Instance) -> RmpIntSolution:
    """
    Minimum total distance partition of the customers into feasible routes.

    Dynamic programme over customer bitmasks: the best cover of a mask picks
    the route through its lowest customer and recurses on the rest.

    Raises
    ------
    GuardError
        If the instance has more than 8 locations.
    """
    _guard(instance, ORACLE_CVRP_MAX_LOCATIONS, "exact CVRP")
    if instance.n_customers == 0:
        return RmpIntSolution(selected=[], objective=0.0)

    by_lowest: Dict[int, List[Tuple[int, Route]]] = {}
    for route in enumerate_routes(instance):
        mask = 0
        for c in route.customers:
            mask |= 1 << (c - 1)
        lowest = (mask & -mask).bit_length() - 1
        by_lowest.setdefault(lowest, []).append((mask, route))

    full = (1 << instance.n_customers) - 1
    best = np.full(full + 1, np.inf)
    choice: List[Optional[Tuple[int, Route]]] = [None] * (full + 1)
    best[0] = 0.0
    for mask in range(1, full + 1):
        lowest = (mask & -mask).bit_length() - 1
        for route_mask, route in by_lowest.get(lowest, ()):
            if route_mask & ~mask:
                continue
            cost = best[mask ^ route_mask] + route.distance
            if cost < best[mask] - 1e-12:
                best[mask] = cost
                choice[mask] = (route_mask, route)

    selected: List[Route] = []
    mask = full
    while mask:
        route_mask, route = choice[mask]
        selected.append(route)
        mask ^= route_mask
    objective = float(sum(r.distance for r in selected))
    logger.debug("Exact CVRP: %d routes, distance %.6f", len(selected), objective)
    return RmpIntSolution(selected=selected, objective=objective)
