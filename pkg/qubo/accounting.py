"""
QCG-CVRP - Qubit Accounting

Qubit counts of the two constraint encodings for the pricing subproblem:
ALiM needs N*T qubits; slack variables need N*(T+1) + ceil(log2 W) - 1.
The simulated register is N*(T-1) because the t=0 slot is fixed.
"""

from dataclasses import asdict, dataclass
from typing import Tuple

from instance import Instance
from utils.errors import ParameterError


def _ceil_log2(value: int) -> int:
    # exact for integers: ceil(log2 1) = 0, ceil(log2 25) = 5
    return (int(value) - 1).bit_length()


def qubit_counts(instance: Instance, T: int) -> Tuple[int, int]:
    """(alim, slack) qubit counts for time-step count T."""
    if T < 2:
        raise ParameterError(f"T must be >= 2, got {T}")
    n = instance.n_locations
    alim = n * T
    slack = n * (T + 1) + _ceil_log2(instance.capacity) - 1
    return alim, slack


@dataclass
class QubitBudget:
    n_locations: int
    T: int
    capacity: int
    alim: int
    slack: int
    simulated: int

    def to_record(self) -> dict:
        return asdict(self)


def qubit_budget(instance: Instance, T: int) -> QubitBudget:
    """ALiM and slack counts next to the register actually simulated."""
    alim, slack = qubit_counts(instance, T)
    return QubitBudget(
        n_locations=instance.n_locations,
        T=T,
        capacity=instance.capacity,
        alim=alim,
        slack=slack,
        simulated=instance.n_locations * (T - 1),
    )
