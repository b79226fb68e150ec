"""
QCG-CVRP - Expectation Values and Shot Sampling

Sampling draws one multinomial sample from |amp|^2 with
``numpy.random.default_rng(seed)`` (PCG64), so a SampleSet is reproducible
for a given seed on any platform with the same NumPy bit generator.
"""

import numpy as np

from qubo import IsingHamiltonian
from utils.errors import ParameterError, SimulationError

from .models import SampleSet, Statevector, bitstring


def expectation(state: Statevector, h_c: IsingHamiltonian) -> float:
    """<psi|H_C|psi>, exact."""
    if h_c.n_qubits != state.n_qubits:
        raise SimulationError(
            f"Hamiltonian on {h_c.n_qubits} qubits, state on {state.n_qubits}"
        )
    return float(np.dot(state.probabilities(), h_c.diagonal()))


def _draw(state: Statevector, shots: int, seed) -> np.ndarray:
    if shots < 1:
        raise ParameterError(f"shots must be >= 1, got {shots}")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs)


def sample(state: Statevector, shots: int, seed) -> SampleSet:
    """Measure ``shots`` times in the computational basis."""
    draws = _draw(state, shots, seed)
    hit = np.flatnonzero(draws)
    counts = {bitstring(int(k), state.n_qubits): int(draws[k]) for k in hit}
    return SampleSet(counts=counts, shots=int(shots))


def shot_expectation(state: Statevector, h_c: IsingHamiltonian, shots: int, seed) -> float:
    """Energy estimated from ``shots`` measurements."""
    draws = _draw(state, shots, seed)
    return float(np.dot(draws, h_c.diagonal()) / shots)
