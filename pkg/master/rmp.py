"""
QCG-CVRP - Restricted Master Problem

The RMP selects routes so every customer is served exactly once at minimum
total distance. Its LP relaxation uses ">= 1" covering rows (same optimum,
nonnegative duals); the final integer solve uses "= 1" partitioning rows.
"""

from utils.config import LP_TOL
from utils.errors import InfeasibleError
from utils.logging_config import get_logger

from instance import Instance

from .partition import solve_set_partition
from .routes import DualSolution, RmpIntSolution, RmpLpSolution, Route, RouteSet
from .simplex import solve_covering_lp

logger = get_logger("master")


def initial_route_set(instance: Instance) -> RouteSet:
    """One depot -> i -> depot route per customer."""
    return RouteSet(Route.build(instance, [c]) for c in instance.customers)


def solve_rmp_lp(routes: RouteSet, instance: Instance, tol: float = LP_TOL) -> RmpLpSolution:
    """
    Solve the LP relaxation of the RMP and extract the customer duals.

    Raises
    ------
    InfeasibleError
        If a customer is covered by no route; ``customer`` names it.
    """
    uncovered = routes.uncovered(instance)
    if uncovered:
        raise InfeasibleError(
            f"customer {uncovered[0]} is not covered by any route", customer=uncovered[0]
        )

    result = solve_covering_lp(routes.costs(), routes.coverage_matrix(instance), tol=tol)
    duals = DualSolution.from_customer_duals(result.duals)
    logger.debug(
        "RMP LP over %d routes: obj=%.9f dual obj=%.9f",
        len(routes), result.objective, duals.objective,
    )
    return RmpLpSolution(x_frac=result.x, objective=result.objective, duals=duals)


def solve_rmp_integer(routes: RouteSet, instance: Instance, tol: float = LP_TOL) -> RmpIntSolution:
    """
    Minimum-distance exact cover of the customers by the given routes.

    Raises
    ------
    InfeasibleError
        If no exact cover exists.
    """
    if instance.n_customers == 0:
        return RmpIntSolution(selected=[], objective=0.0)
    uncovered = routes.uncovered(instance)
    if uncovered:
        raise InfeasibleError(
            f"customer {uncovered[0]} is not covered by any route", customer=uncovered[0]
        )
    indices, objective = solve_set_partition(
        routes.costs(), routes.coverage_matrix(instance), lp_tol=tol
    )
    selected = [routes[j] for j in indices]
    logger.debug("Integer RMP over %d routes: %d selected, obj=%.9f", len(routes), len(selected), objective)
    return RmpIntSolution(selected=selected, objective=objective)
