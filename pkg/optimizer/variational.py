"""
QCG-CVRP - Variational Parameter Optimizer

Derivative-free local search over the 2p angles [gamma_1..gamma_p,
beta_1..beta_p]. Nelder-Mead with adaptive coefficients is the default;
COBYLA is available behind the same interface. Both come from
``scipy.optimize.minimize``; a counting wrapper enforces the evaluation
budget strictly and records every evaluation.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from simulator import Params
from utils.config import (
    DEFAULT_CONVERGENCE_TOL, DEFAULT_INITIAL_STEP, DEFAULT_MAX_EVALS, DEFAULT_PARAM_TOL,
)
from utils.errors import ParameterError
from utils.logging_config import get_logger

logger = get_logger("optimizer")

METHODS = ("nelder-mead", "cobyla")

Objective = Callable[[Params], float]


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Attributes
    ----------
    max_evals : int
        Hard budget of objective evaluations over all restarts.
    initial_params : Params, optional
        Starting point; ``None`` means gamma_k = beta_k = 0.01.
    initial_step : float
        Initial simplex edge (Nelder-Mead) or trust radius (COBYLA).
    convergence_tol : float
        Absolute objective change that ends a run.
    param_tol : float
        Simplex size that ends a Nelder-Mead run.
    seed : int
        Seeds the perturbation of restart points.
    restarts : int
        Extra runs from perturbed starting points.
    method : str
        ``"nelder-mead"`` or ``"cobyla"``.
    """

    max_evals: int = DEFAULT_MAX_EVALS
    initial_params: Optional[Params] = None
    initial_step: float = DEFAULT_INITIAL_STEP
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL
    param_tol: float = DEFAULT_PARAM_TOL
    seed: int = 0
    restarts: int = 0
    method: str = "nelder-mead"

    def __post_init__(self):
        if self.max_evals < 1:
            raise ParameterError(f"max_evals must be >= 1, got {self.max_evals}")
        if self.initial_step <= 0:
            raise ParameterError(f"initial_step must be > 0, got {self.initial_step}")
        if self.restarts < 0:
            raise ParameterError(f"restarts must be >= 0, got {self.restarts}")
        if self.method not in METHODS:
            raise ParameterError(f"unknown method {self.method!r}, expected one of {METHODS}")


@dataclass
class OptResult:
    best_params: Params
    best_value: float
    n_evals: int
    trace: List[Tuple[int, float]] = field(default_factory=list)

    def incumbents(self) -> List[Tuple[int, float]]:
        """Evaluations that improved on every earlier one."""
        out: List[Tuple[int, float]] = []
        for k, value in self.trace:
            if not out or value < out[-1][1]:
                out.append((k, value))
        return out


class _BudgetExhausted(Exception):
    pass


class _CountingObjective:
    """Counts evaluations, keeps the incumbent, stops at the budget."""

    def __init__(self, objective: Objective, p: int, max_evals: int):
        self.objective = objective
        self.p = p
        self.max_evals = max_evals
        self.trace: List[Tuple[int, float]] = []
        self.best_value = np.inf
        self.best_vector: Optional[np.ndarray] = None

    @property
    def n_evals(self) -> int:
        return len(self.trace)

    def __call__(self, vector: np.ndarray) -> float:
        if self.n_evals >= self.max_evals:
            raise _BudgetExhausted()
        value = float(self.objective(Params.from_vector(vector, self.p)))
        self.trace.append((self.n_evals, value))
        if value < self.best_value:
            self.best_value = value
            self.best_vector = np.array(vector, dtype=np.float64)
        logger.debug("eval %d: %.9f", self.n_evals, value)
        return value


def _local_search(counted: _CountingObjective, x0: np.ndarray, config: OptimizerConfig) -> None:
    if config.method == "nelder-mead":
        simplex = np.vstack([x0] + [x0 + config.initial_step * e for e in np.eye(x0.size)])
        options = {
            "initial_simplex": simplex,
            "maxfev": config.max_evals,
            "fatol": config.convergence_tol,
            "xatol": config.param_tol,
            "adaptive": True,
        }
        scipy_minimize(counted, x0, method="Nelder-Mead", options=options)
    else:
        options = {
            "rhobeg": config.initial_step,
            "maxiter": config.max_evals,
            "tol": config.convergence_tol,
        }
        scipy_minimize(counted, x0, method="COBYLA", options=options)


def minimize(objective: Objective, p: int, config: OptimizerConfig) -> OptResult:
    """
    Minimise ``objective`` over the 2p variational angles.

    The initial point is always evaluated first, so the result is never
    worse than it.

    Raises
    ------
    ParameterError
        If ``p < 1`` or the initial parameters have the wrong depth.
    """
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    start = config.initial_params or Params.default(p)
    if start.p != p:
        raise ParameterError(f"initial parameters have {start.p} layers, expected {p}")

    counted = _CountingObjective(objective, p, config.max_evals)
    x0 = start.to_vector()
    rng = np.random.default_rng(config.seed)
    try:
        counted(x0)
        _local_search(counted, x0, config)
        for _ in range(config.restarts):
            restart = counted.best_vector + rng.normal(0.0, config.initial_step, size=x0.size)
            _local_search(counted, restart, config)
    except _BudgetExhausted:
        logger.debug("optimizer budget of %d evaluations exhausted", config.max_evals)

    result = OptResult(
        best_params=Params.from_vector(counted.best_vector, p),
        best_value=counted.best_value,
        n_evals=counted.n_evals,
        trace=counted.trace,
    )
    logger.debug(
        "%s finished: best=%.9f after %d evaluations", config.method, result.best_value, result.n_evals
    )
    return result
