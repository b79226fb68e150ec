"""
QCG-CVRP - Pricing Subproblem QUBO (ALiM)

Binary variables x_{i,t} mean "the vehicle is at location i at time t". The
start slot is fixed (x_{0,0} = 1, x_{c,0} = 0 for customers) and substituted
out, so only t = 1..T-1 remain, mapped to qubits as q = (t-1)*N + i.

The penalised objective is

    sum_t sum_{i,j} d_ij x_{i,t} x_{j,(t+1) mod T}          (travel)
  - sum_t sum_i y_i x_{i,t}                                 (dual prices)
  + l1 (S - W) + l1 (S - W)^2,  S = sum_t sum_i w_i x_{i,t} (capacity)
  + l2 sum_t sum_i x_{i,t} (sum_i' x_{i',t} - 1)            (at most one per slot)

The slot equality sum_i x_{i,t} = 1 is left to the XY mixer, or added as a
quadratic penalty for the X-mixer baseline (``add_onehot_penalty``).
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Sequence, Tuple

import numpy as np

from instance import Instance
from master import DualSolution
from utils.config import DEFAULT_LAMBDA1, DEFAULT_LAMBDA2, DEFAULT_LAMBDA3
from utils.errors import ParameterError
from utils.logging_config import get_logger

logger = get_logger("qubo")

Pair = Tuple[int, int]


def qubit_index(location: int, t: int, n_locations: int) -> int:
    """Qubit of x_{location,t} for t in 1..T-1."""
    return (t - 1) * n_locations + location


def qubit_location(q: int, n_locations: int) -> Tuple[int, int]:
    """Inverse of ``qubit_index``: (location, t)."""
    return q % n_locations, q // n_locations + 1


@dataclass(frozen=True, eq=False)
class SubproblemSpec:
    """Inputs of one pricing subproblem."""

    instance: Instance
    duals: DualSolution
    T: int
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    lambda3: float = DEFAULT_LAMBDA3

    def validate(self) -> None:
        if self.T < 2:
            raise ParameterError(f"T must be >= 2, got {self.T}")
        for name in ("lambda1", "lambda2", "lambda3"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        if len(self.duals.y) != self.instance.n_locations:
            raise ParameterError(
                f"{len(self.duals.y) - 1} duals for {self.instance.n_customers} customers"
            )

    @property
    def n_slots(self) -> int:
        return self.T - 1


@dataclass
class QuboProblem:
    """
    f(x) = offset + sum_q linear[q] x_q + sum_{a<b} quadratic[(a,b)] x_a x_b
    """

    n_vars: int
    linear: np.ndarray
    quadratic: Dict[Pair, float] = field(default_factory=dict)
    offset: float = 0.0
    n_locations: int = 0
    n_slots: int = 0

    def add_linear(self, q: int, value: float) -> None:
        self.linear[q] += value

    def add_quadratic(self, a: int, b: int, value: float) -> None:
        if a == b:
            # x^2 == x for binaries
            self.linear[a] += value
            return
        key = (a, b) if a < b else (b, a)
        self.quadratic[key] = self.quadratic.get(key, 0.0) + value

    def copy(self) -> "QuboProblem":
        return replace(self, linear=self.linear.copy(), quadratic=dict(self.quadratic))

    @property
    def var_index(self) -> Dict[Pair, int]:
        """(location, t) -> qubit."""
        return {
            (i, t): qubit_index(i, t, self.n_locations)
            for t in range(1, self.n_slots + 1)
            for i in range(self.n_locations)
        }


def evaluate(qubo: QuboProblem, bits: Sequence[int]) -> float:
    """Objective value of one assignment (bit q is x_q)."""
    x = np.asarray(bits, dtype=np.float64)
    if x.shape != (qubo.n_vars,):
        raise ParameterError(f"expected {qubo.n_vars} bits, got {x.shape[0] if x.ndim else 0}")
    value = qubo.offset + float(qubo.linear @ x)
    for (a, b), c in qubo.quadratic.items():
        value += c * x[a] * x[b]
    return value


def build_alim_qubo(spec: SubproblemSpec) -> QuboProblem:
    """
    Build the ALiM-relaxed pricing QUBO over x_{i,t}, t = 1..T-1.

    Raises
    ------
    ParameterError
        If ``T < 2``, a multiplier is negative, or the duals do not match
        the instance.
    """
    spec.validate()
    inst = spec.instance
    n = inst.n_locations
    slots = spec.n_slots
    dist = inst.dist
    y = spec.duals.y
    w = np.asarray(inst.demands, dtype=np.float64)
    cap = float(inst.capacity)
    l1, l2 = spec.lambda1, spec.lambda2

    qubo = QuboProblem(
        n_vars=n * slots, linear=np.zeros(n * slots), n_locations=n, n_slots=slots
    )

    def q(i: int, t: int) -> int:
        return qubit_index(i, t, n)

    # Travel. The t=0 start is the depot, so the 0->1 leg and the (T-1)->0
    # wrap leg are linear; d_00 = 0 leaves no constant.
    for j in range(n):
        qubo.add_linear(q(j, 1), dist[0, j])
        qubo.add_linear(q(j, slots), dist[j, 0])
    for t in range(1, slots):
        for i in range(n):
            for j in range(n):
                if i != j and dist[i, j] != 0.0:
                    qubo.add_quadratic(q(i, t), q(j, t + 1), dist[i, j])

    # Dual prices (y_0 = 0)
    for t in range(1, slots + 1):
        for i in range(n):
            qubo.add_linear(q(i, t), -y[i])

    # Capacity: l1 (S - W) + l1 (S - W)^2 with S = sum w_i x_{i,t}
    variables = [(q(i, t), w[i]) for t in range(1, slots + 1) for i in range(n)]
    for a, wa in variables:
        qubo.add_linear(a, l1 * (wa * wa + (1.0 - 2.0 * cap) * wa))
    for k, (a, wa) in enumerate(variables):
        if wa == 0.0:
            continue
        for b, wb in variables[k + 1:]:
            if wb != 0.0:
                qubo.add_quadratic(a, b, 2.0 * l1 * wa * wb)
    qubo.offset += l1 * (cap * cap - cap)

    # At most one location per slot: l2 * 2 * sum_{i<i'} x_{i,t} x_{i',t}
    if l2 != 0.0:
        for t in range(1, slots + 1):
            for i in range(n):
                for i2 in range(i + 1, n):
                    qubo.add_quadratic(q(i, t), q(i2, t), 2.0 * l2)

    logger.debug(
        "ALiM QUBO: N=%d T=%d vars=%d couplings=%d offset=%.3f",
        n, spec.T, qubo.n_vars, len(qubo.quadratic), qubo.offset,
    )
    return qubo


def add_onehot_penalty(qubo: QuboProblem, spec: SubproblemSpec) -> QuboProblem:
    """
    Return a copy with l3 * sum_t (sum_i x_{i,t} - 1)^2 added, the penalty
    form of the slot one-hot constraint used with the X mixer.
    """
    l3 = spec.lambda3
    out = qubo.copy()
    n = qubo.n_locations
    for t in range(1, qubo.n_slots + 1):
        slot = [qubit_index(i, t, n) for i in range(n)]
        for k, a in enumerate(slot):
            out.add_linear(a, -l3)
            for b in slot[k + 1:]:
                out.add_quadratic(a, b, 2.0 * l3)
        out.offset += l3
    return out
