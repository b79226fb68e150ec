"""
QCG-CVRP - CVRP Instance Model

A CVRP instance is a depot (location 0) plus customers 1..N-1 in the unit
square, integer demands w_i and a single vehicle capacity W. The Euclidean
distance matrix is derived at construction and never stored on disk.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from utils.config import DEPOT_COORD
from utils.errors import ParameterError
from utils.logging_config import get_logger

logger = get_logger("instance")


def euclidean_distances(coords: np.ndarray) -> np.ndarray:
    """Dense symmetric distance matrix with an exactly zero diagonal."""
    coords = np.asarray(coords, dtype=np.float64)
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    dist = 0.5 * (dist + dist.T)
    np.fill_diagonal(dist, 0.0)
    return dist


@dataclass(frozen=True)
class Instance:
    """
    Immutable CVRP instance.

    Attributes
    ----------
    coords : tuple of (x, y)
        Location coordinates, depot first.
    demands : tuple of int
        w_i per location; ``demands[0] == 0``.
    capacity : int
        Vehicle capacity W.
    dist : np.ndarray
        Derived N x N Euclidean distances (excluded from equality and hash).
    """

    coords: Tuple[Tuple[float, float], ...]
    demands: Tuple[int, ...]
    capacity: int
    dist: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        coords = tuple((float(x), float(y)) for x, y in self.coords)
        demands = tuple(int(w) for w in self.demands)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "capacity", int(self.capacity))

        if len(coords) < 1:
            raise ParameterError("an instance needs at least the depot")
        if len(demands) != len(coords):
            raise ParameterError(
                f"{len(demands)} demands for {len(coords)} locations"
            )
        if self.capacity < 1:
            raise ParameterError(f"capacity must be >= 1, got {self.capacity}")
        if demands[0] != 0:
            raise ParameterError(f"depot demand must be 0, got {demands[0]}")
        for i, w in enumerate(demands[1:], start=1):
            if not 1 <= w <= self.capacity:
                raise ParameterError(
                    f"demand of customer {i} is {w}, expected 1..{self.capacity}"
                )

        dist = euclidean_distances(np.array(coords))
        dist.setflags(write=False)
        object.__setattr__(self, "dist", dist)

    @property
    def n_locations(self) -> int:
        return len(self.coords)

    @property
    def n_customers(self) -> int:
        return len(self.coords) - 1

    @property
    def customers(self) -> range:
        return range(1, len(self.coords))

    @property
    def total_demand(self) -> int:
        return sum(self.demands)

    @property
    def min_vehicles(self) -> int:
        """Capacity lower bound on the number of routes, ceil(sum w / W)."""
        return -(-self.total_demand // self.capacity)


def generate_instance(
    seed: int,
    n_customers: int,
    capacity: int,
    demand_lo: int,
    demand_hi: int,
) -> Instance:
    """
    Generate a random instance: customers uniform in [0, 1]^2, depot at the
    centre, integer demands uniform in [demand_lo, demand_hi].

    Total demand is allowed to exceed the capacity; several routes are then
    required, which is the intended regime. Coincident customers are allowed.

    Raises
    ------
    ParameterError
        If ``n_customers < 1`` or ``not 1 <= demand_lo <= demand_hi <= capacity``.
    """
    if n_customers < 1:
        raise ParameterError(f"n_customers must be >= 1, got {n_customers}")
    if not 1 <= demand_lo <= demand_hi <= capacity:
        raise ParameterError(
            f"need 1 <= demand_lo <= demand_hi <= capacity, got "
            f"{demand_lo}, {demand_hi}, {capacity}"
        )

    rng = np.random.default_rng(seed)
    customer_coords = rng.uniform(0.0, 1.0, size=(n_customers, 2))
    customer_demands = rng.integers(demand_lo, demand_hi + 1, size=n_customers)

    coords = [DEPOT_COORD] + [tuple(c) for c in customer_coords.tolist()]
    demands = [0] + customer_demands.tolist()
    instance = Instance(coords=tuple(coords), demands=tuple(demands), capacity=capacity)
    logger.debug(
        "Generated instance seed=%s customers=%d total_demand=%d W=%d",
        seed, n_customers, instance.total_demand, capacity,
    )
    return instance
