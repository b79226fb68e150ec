"""
QCG-CVRP - Routes, Route Sets and Master-Problem Solutions

A route is a depot-anchored tour over distinct customers. Routes are stored
in canonical direction: of the visit sequence and its reversal, the
lexicographically smaller one.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from instance import Instance
from utils.errors import ParameterError


def canonical_sequence(customers: Sequence[int]) -> Tuple[int, ...]:
    """Smaller of the sequence and its reversal."""
    forward = tuple(int(c) for c in customers)
    backward = forward[::-1]
    return min(forward, backward)


def tour_distance(instance: Instance, customers: Sequence[int]) -> float:
    """Depot -> customers in order -> depot."""
    if not customers:
        return 0.0
    stops = [0, *customers, 0]
    dist = instance.dist
    return float(sum(dist[a, b] for a, b in zip(stops[:-1], stops[1:])))


@dataclass(frozen=True)
class Route:
    """
    A single vehicle tour.

    Attributes
    ----------
    customers : tuple of int
        Canonical visit order, depot excluded.
    distance : float
        d_r including both depot legs.
    load : int
        Sum of customer demands.
    """

    customers: Tuple[int, ...]
    distance: float = field(compare=False)
    load: int = field(compare=False)

    @classmethod
    def build(cls, instance: Instance, customers: Sequence[int]) -> "Route":
        """
        Validate and canonicalise a visit sequence.

        Raises
        ------
        ParameterError
            On repeated customers, the depot or an unknown location in the
            sequence, or a load above the capacity.
        """
        seq = tuple(int(c) for c in customers)
        if len(set(seq)) != len(seq):
            raise ParameterError(f"route visits a customer twice: {seq}")
        for c in seq:
            if not 1 <= c < instance.n_locations:
                raise ParameterError(f"route contains non-customer location {c}")
        load = sum(instance.demands[c] for c in seq)
        if load > instance.capacity:
            raise ParameterError(
                f"route {seq} has load {load} > capacity {instance.capacity}"
            )
        seq = canonical_sequence(seq)
        return cls(customers=seq, distance=tour_distance(instance, seq), load=load)

    @classmethod
    def empty(cls) -> "Route":
        """The all-depot route: covers nobody, costs nothing."""
        return cls(customers=(), distance=0.0, load=0)

    @property
    def is_empty(self) -> bool:
        return not self.customers

    def covers(self, customer: int) -> bool:
        return customer in self.customers

    def coverage(self, n_locations: int) -> np.ndarray:
        """a_ri as a 0/1 vector over all locations (depot entry always 0)."""
        a = np.zeros(n_locations)
        a[list(self.customers)] = 1.0
        return a

    def reduced_cost(self, duals: "DualSolution") -> float:
        """c_r = d_r - sum_i a_ri y_i."""
        return self.distance - float(sum(duals.y[c] for c in self.customers))

    def __str__(self) -> str:
        return "0 -> " + " -> ".join(str(c) for c in self.customers) + " -> 0"


class RouteSet:
    """Ordered, duplicate-free collection of non-empty canonical routes."""

    def __init__(self, routes: Iterable[Route] = ()):
        self._routes: List[Route] = []
        self._keys: Dict[Tuple[int, ...], int] = {}
        for r in routes:
            self.add(r)

    def add(self, route: Route) -> bool:
        """Append a route; False if it is empty or already present."""
        if route.is_empty or route.customers in self._keys:
            return False
        self._keys[route.customers] = len(self._routes)
        self._routes.append(route)
        return True

    def __contains__(self, route: Route) -> bool:
        return route.customers in self._keys

    def __len__(self) -> int:
        return len(self._routes)

    def __iter__(self) -> Iterator[Route]:
        return iter(self._routes)

    def __getitem__(self, index: int) -> Route:
        return self._routes[index]

    @property
    def routes(self) -> List[Route]:
        return list(self._routes)

    def costs(self) -> np.ndarray:
        return np.array([r.distance for r in self._routes], dtype=np.float64)

    def coverage_matrix(self, instance: Instance) -> np.ndarray:
        """a_ri with one row per customer (1..N-1) and one column per route."""
        a = np.zeros((instance.n_customers, len(self._routes)))
        for j, r in enumerate(self._routes):
            for c in r.customers:
                a[c - 1, j] = 1.0
        return a

    def uncovered(self, instance: Instance) -> List[int]:
        covered = {c for r in self._routes for c in r.customers}
        return [c for c in instance.customers if c not in covered]


@dataclass(frozen=True, eq=False)
class DualSolution:
    """
    Covering-constraint duals y_i, indexed by location. ``y[0]`` is the
    depot and is always 0 so pricing can be written over all locations.
    """

    y: np.ndarray

    @classmethod
    def from_customer_duals(cls, values: Sequence[float]) -> "DualSolution":
        y = np.concatenate([[0.0], np.asarray(values, dtype=np.float64)])
        y.setflags(write=False)
        return cls(y=y)

    @classmethod
    def zeros(cls, instance: Instance) -> "DualSolution":
        return cls.from_customer_duals(np.zeros(instance.n_customers))

    @property
    def objective(self) -> float:
        return float(self.y[1:].sum())

    def customer_duals(self) -> np.ndarray:
        return self.y[1:]

    def to_record(self) -> List[float]:
        return [float(v) for v in self.y[1:]]


@dataclass
class RmpLpSolution:
    """LP relaxation of the RMP (covering form) with its duals."""

    x_frac: np.ndarray
    objective: float
    duals: DualSolution

    def active_routes(self, routes: RouteSet, tol: float = 1e-9) -> List[Tuple[Route, float]]:
        return [(r, float(x)) for r, x in zip(routes, self.x_frac) if x > tol]


@dataclass
class RmpIntSolution:
    """Integer RMP (set partitioning): the selected routes."""

    selected: List[Route]
    objective: float

    def gap_to(self, lp_objective: float) -> float:
        """Integrality gap relative to an LP bound (0 when they coincide)."""
        return self.objective - lp_objective

    def covers_exactly_once(self, instance: Instance) -> bool:
        seen = [c for r in self.selected for c in r.customers]
        return sorted(seen) == list(instance.customers)
