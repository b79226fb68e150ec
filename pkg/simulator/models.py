"""
QCG-CVRP - Simulator Data Model

Bit ordering: qubit q is bit q of the basis index (little-endian). For the
pricing register q = (t-1)*N + i encodes "location i at time slot t". Printed
bitstrings list qubit 0 first, so character q of the string is qubit q.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple

import numpy as np

from utils.config import DEFAULT_INITIAL_PARAM, MAX_QUBITS
from utils.errors import GuardError, ParameterError, SimulationError

NORM_TOL = 1e-10


def bitstring(index: int, n_qubits: int) -> str:
    """Printed form of a basis index: character q is qubit q."""
    return "".join("1" if (index >> q) & 1 else "0" for q in range(n_qubits))


def bits_from_string(bits: str) -> Tuple[int, ...]:
    return tuple(1 if ch == "1" else 0 for ch in bits)


def index_from_string(bits: str) -> int:
    return sum(1 << q for q, ch in enumerate(bits) if ch == "1")


@dataclass
class Statevector:
    """Normalised complex amplitudes over 2^n basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits > MAX_QUBITS:
            raise GuardError(
                f"{self.n_qubits} qubits exceeds the statevector cap of {MAX_QUBITS}"
            )
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise SimulationError(
                f"{self.amplitudes.shape[0]} amplitudes for {self.n_qubits} qubits"
            )

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "Statevector":
        if n_qubits > MAX_QUBITS:
            raise GuardError(f"{n_qubits} qubits exceeds the statevector cap of {MAX_QUBITS}")
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits=n_qubits, amplitudes=amps)

    @classmethod
    def uniform(cls, n_qubits: int) -> "Statevector":
        if n_qubits > MAX_QUBITS:
            raise GuardError(f"{n_qubits} qubits exceeds the statevector cap of {MAX_QUBITS}")
        dim = 1 << n_qubits
        return cls(n_qubits=n_qubits, amplitudes=np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_error(self) -> float:
        return abs(float(np.sum(self.probabilities())) - 1.0)

    def validate(self, tol: float = NORM_TOL) -> None:
        err = self.norm_error()
        if err > tol:
            raise SimulationError(f"statevector norm drifted by {err:.3e}")

    def copy(self) -> "Statevector":
        return Statevector(n_qubits=self.n_qubits, amplitudes=self.amplitudes.copy())


@dataclass
class SampleSet:
    """Measurement counts keyed by printed bitstring."""

    counts: Dict[str, int]
    shots: int

    def most_common(self, k: int = 10):
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]


class AnsatzKind(Enum):
    X_MIXER_QAOA = "qaoa"
    XY_MIXER_ANSATZ = "qaoansatz"


@dataclass(frozen=True)
class AnsatzConfig:
    """
    Circuit shape: ``p`` layers over ``n_slots`` time-slot blocks of
    ``n_locations`` qubits each.
    """

    kind: AnsatzKind
    p: int
    n_locations: int
    n_slots: int

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError(f"p must be >= 1, got {self.p}")
        if self.n_locations < 1 or self.n_slots < 1:
            raise ParameterError(
                f"need at least one location and one slot, got {self.n_locations}x{self.n_slots}"
            )

    @property
    def n_qubits(self) -> int:
        return self.n_locations * self.n_slots

    @property
    def register_layout(self) -> Dict[int, range]:
        """time slot t (1..T-1) -> its contiguous qubit block."""
        n = self.n_locations
        return {t: range((t - 1) * n, t * n) for t in range(1, self.n_slots + 1)}

    def one_hot_mask(self) -> np.ndarray:
        """Boolean mask of basis states with exactly one bit set per slot."""
        index = np.arange(1 << self.n_qubits, dtype=np.int64)
        block = (1 << self.n_locations) - 1
        mask = np.ones(index.shape[0], dtype=bool)
        for t in range(self.n_slots):
            bits = (index >> (t * self.n_locations)) & block
            mask &= (bits != 0) & ((bits & (bits - 1)) == 0)
        return mask


def one_hot_leakage(state: Statevector, config: AnsatzConfig) -> float:
    """Probability mass outside the per-slot one-hot subspace."""
    return float(np.sum(state.probabilities()[~config.one_hot_mask()]))


@dataclass(frozen=True)
class Params:
    """Variational angles, one (gamma, beta) pair per layer."""

    gammas: Tuple[float, ...]
    betas: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ParameterError(
                f"need equal nonempty gammas/betas, got {len(self.gammas)}/{len(self.betas)}"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def default(cls, p: int, value: float = DEFAULT_INITIAL_PARAM) -> "Params":
        return cls(gammas=(value,) * p, betas=(value,) * p)

    def to_vector(self) -> np.ndarray:
        """[gamma_1..gamma_p, beta_1..beta_p]"""
        return np.array(self.gammas + self.betas, dtype=np.float64)

    @classmethod
    def from_vector(cls, vector: Sequence[float], p: int) -> "Params":
        v = np.asarray(vector, dtype=np.float64)
        if v.shape != (2 * p,):
            raise ParameterError(f"expected {2 * p} parameters, got {v.size}")
        return cls(gammas=tuple(v[:p]), betas=tuple(v[p:]))
