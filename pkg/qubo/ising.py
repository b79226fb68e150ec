"""
QCG-CVRP - Ising Hamiltonian

Substituting x = (1 - z) / 2 turns a QUBO into

    H(z) = constant + sum_q h_q z_q + sum_{a<b} J_ab z_a z_b,   z in {+1, -1}

Bit q of a computational basis index k is x_q, so z_q(k) = 1 - 2 * ((k >> q) & 1).
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from utils.errors import ParameterError
from utils.logging_config import get_logger

from .builder import QuboProblem

logger = get_logger("qubo.ising")

Pair = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class IsingHamiltonian:
    """Diagonal cost Hamiltonian H_C in Z / ZZ form."""

    h: np.ndarray
    J: Dict[Pair, float] = field(default_factory=dict)
    constant: float = 0.0

    @property
    def n_qubits(self) -> int:
        return int(self.h.shape[0])

    @cached_property
    def _diagonal(self) -> np.ndarray:
        n = self.n_qubits
        index = np.arange(1 << n, dtype=np.int64)

        def spin(q: int) -> np.ndarray:
            return 1.0 - 2.0 * ((index >> q) & 1)

        energies = np.full(1 << n, self.constant, dtype=np.float64)
        for q in range(n):
            if self.h[q] != 0.0:
                energies += self.h[q] * spin(q)
        partners: Dict[int, list] = {}
        for (a, b), coeff in self.J.items():
            partners.setdefault(a, []).append((b, coeff))
        for a, terms in partners.items():
            field_a = np.zeros(1 << n, dtype=np.float64)
            for b, coeff in terms:
                field_a += coeff * spin(b)
            energies += spin(a) * field_a
        energies.setflags(write=False)
        return energies

    def diagonal(self) -> np.ndarray:
        """Energies of all 2^n basis states (computed once per Hamiltonian)."""
        return self._diagonal


def qubo_to_ising(qubo: QuboProblem) -> IsingHamiltonian:
    """Exact change of variables x = (1 - z) / 2."""
    h = -0.5 * qubo.linear.astype(np.float64)
    constant = qubo.offset + 0.5 * float(qubo.linear.sum())
    J: Dict[Pair, float] = {}
    for (a, b), c in qubo.quadratic.items():
        if c == 0.0:
            continue
        J[(a, b)] = J.get((a, b), 0.0) + 0.25 * c
        h[a] -= 0.25 * c
        h[b] -= 0.25 * c
        constant += 0.25 * c
    return IsingHamiltonian(h=h, J=J, constant=constant)


def ising_energy(hamiltonian: IsingHamiltonian, bits: Sequence[int]) -> float:
    """Energy of one bitstring (x_q in {0, 1}) under H_C."""
    x = np.asarray(bits, dtype=np.float64)
    if x.shape != (hamiltonian.n_qubits,):
        raise ParameterError(f"expected {hamiltonian.n_qubits} bits, got {x.size}")
    z = 1.0 - 2.0 * x
    value = hamiltonian.constant + float(hamiltonian.h @ z)
    for (a, b), c in hamiltonian.J.items():
        value += c * z[a] * z[b]
    return value


# =============================================================================
# EXPORT
# =============================================================================

def qubo_to_document(qubo: QuboProblem) -> dict:
    return {
        "kind": "qubo",
        "n_vars": qubo.n_vars,
        "n_locations": qubo.n_locations,
        "n_slots": qubo.n_slots,
        "linear": [float(v) for v in qubo.linear],
        "quadratic": [[a, b, float(c)] for (a, b), c in sorted(qubo.quadratic.items())],
        "offset": float(qubo.offset),
    }


def ising_to_document(hamiltonian: IsingHamiltonian) -> dict:
    return {
        "kind": "ising",
        "n_qubits": hamiltonian.n_qubits,
        "h": [float(v) for v in hamiltonian.h],
        "J": [[a, b, float(c)] for (a, b), c in sorted(hamiltonian.J.items())],
        "constant": float(hamiltonian.constant),
    }


def write_document(document: dict, path: Union[str, Path]) -> Path:
    """Write a QUBO/Ising export as JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2) + "\n")
    logger.info("Wrote %s export to %s", document.get("kind", "model"), path)
    return path
