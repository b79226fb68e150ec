"""QCG-CVRP - Pricing QUBO Package"""

from .builder import (
    SubproblemSpec, QuboProblem, build_alim_qubo, add_onehot_penalty, evaluate,
    qubit_index, qubit_location,
)
from .ising import (
    IsingHamiltonian, qubo_to_ising, ising_energy,
    qubo_to_document, ising_to_document, write_document,
)
from .accounting import QubitBudget, qubit_counts, qubit_budget

__all__ = [
    "SubproblemSpec", "QuboProblem", "build_alim_qubo", "add_onehot_penalty", "evaluate",
    "qubit_index", "qubit_location",
    "IsingHamiltonian", "qubo_to_ising", "ising_energy",
    "qubo_to_document", "ising_to_document", "write_document",
    "QubitBudget", "qubit_counts", "qubit_budget",
]
