"""
QCG-CVRP - Circuit Operators

Exact, in-place statevector updates:

- phase separation  exp(-i gamma H_C), diagonal in the computational basis
- X mixer           exp(-i beta sum_q X_q), one Rx rotation per qubit
- XY ring mixer     exp(-i beta H_ring) on every time-slot block, where
                    H_ring = 1/2 sum_i (X_i X_{i+1} + Y_i Y_{i+1}) on a cycle

The XY block unitary is built from the eigendecomposition of the dense
2^N x 2^N ring Hamiltonian (no Trotterisation) and cached per (N, beta).
"""

from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from qubo import IsingHamiltonian
from utils.errors import SimulationError
from utils.logging_config import get_logger

from .models import AnsatzConfig, Statevector

logger = get_logger("simulator")


def apply_phase_separator(state: Statevector, gamma: float, h_c: IsingHamiltonian) -> Statevector:
    """Multiply each amplitude by exp(-i gamma E(x))."""
    if h_c.n_qubits != state.n_qubits:
        raise SimulationError(
            f"Hamiltonian on {h_c.n_qubits} qubits applied to {state.n_qubits}-qubit state"
        )
    if gamma != 0.0:
        state.amplitudes *= np.exp(-1j * gamma * h_c.diagonal())
    return state


def apply_x_mixer(state: Statevector, beta: float) -> Statevector:
    """Apply exp(-i beta X) to every qubit (the terms commute)."""
    if beta == 0.0:
        return state
    c, s = np.cos(beta), -1j * np.sin(beta)
    n = state.n_qubits
    for q in range(n):
        view = state.amplitudes.reshape(1 << (n - q - 1), 2, 1 << q)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 + s * a1
        view[:, 1, :] = s * a0 + c * a1
    return state


# =============================================================================
# XY RING MIXER
# =============================================================================

def ring_pairs(n: int) -> List[Tuple[int, int]]:
    """Nearest-neighbour pairs of an n-cycle; n=2 lists its edge twice."""
    if n < 2:
        return []
    return [(i, (i + 1) % n) for i in range(n)]


def xy_ring_hamiltonian(n: int) -> np.ndarray:
    """Dense H_ring on n qubits (little-endian local ordering)."""
    dim = 1 << n
    h = np.zeros((dim, dim), dtype=np.float64)
    for k in range(dim):
        for a, b in ring_pairs(n):
            if ((k >> a) & 1) != ((k >> b) & 1):
                # 1/2 (XX + YY) swaps |01> and |10> with amplitude 1
                h[k ^ ((1 << a) | (1 << b)), k] += 1.0
    return h


@lru_cache(maxsize=16)
def _ring_eigensystem(n: int) -> Tuple[np.ndarray, np.ndarray]:
    w, v = eigh(xy_ring_hamiltonian(n))
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


@lru_cache(maxsize=512)
def xy_ring_unitary(n: int, beta: float) -> np.ndarray:
    """exp(-i beta H_ring) for an n-qubit block."""
    w, v = _ring_eigensystem(n)
    u = (v * np.exp(-1j * beta * w)) @ v.T
    u.setflags(write=False)
    return u


def apply_xy_ring_mixer(
    state: Statevector,
    beta: float,
    config: AnsatzConfig,
    slot_order: Optional[Iterable[int]] = None,
) -> Statevector:
    """
    Apply exp(-i beta H_ring) independently to each time-slot block.

    Blocks act on disjoint qubits, so ``slot_order`` does not change the result.
    """
    if config.n_qubits != state.n_qubits:
        raise SimulationError(
            f"register of {config.n_qubits} qubits applied to {state.n_qubits}-qubit state"
        )
    n_block = config.n_locations
    if beta == 0.0 or n_block < 2:
        return state

    u = xy_ring_unitary(n_block, float(beta))
    layout = config.register_layout
    order = list(layout) if slot_order is None else list(slot_order)
    total = state.n_qubits
    for t in order:
        offset = layout[t].start
        view = state.amplitudes.reshape(1 << (total - offset - n_block), 1 << n_block, 1 << offset)
        view[...] = np.einsum("ab,xbz->xaz", u, view)
    return state
