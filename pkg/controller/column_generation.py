"""
QCG-CVRP - Column Generation Controller

One run of the loop:
    (i)   start from one singleton route per customer
    (ii)  solve the RMP LP relaxation and read the duals y_i
    (iii) price: minimise the reduced cost with the configured subsolver
    (iv)  decode the samples into routes and rank them by reduced cost
    (v)   inject up to K new routes with negative reduced cost
    (vi)  stop when no negative column remains, then solve the integer RMP

Simulated pricing is stochastic and may miss existing columns, so a single
empty pricing round is not taken as proof of optimality. Without oracle
verification two consecutive stalls are required; with it, exact pricing
must confirm that no negative column exists.
"""

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from instance import Instance
from master import (
    DualSolution, RmpIntSolution, Route, RouteSet,
    initial_route_set, solve_rmp_integer, solve_rmp_lp,
)
from optimizer import OptimizerConfig, OptResult, minimize
from oracle import exact_min_reduced_cost, rank_routes_by_reduced_cost
from qubo import SubproblemSpec, add_onehot_penalty, build_alim_qubo, qubo_to_ising
from simulator import (
    AnsatzConfig, AnsatzKind, Params, SampleSet,
    expectation, run_ansatz, sample, shot_expectation,
)
from utils.config import (
    DEFAULT_CONVERGENCE_EPS, DEFAULT_LAMBDA1, DEFAULT_LAMBDA2, DEFAULT_LAMBDA3,
    DEFAULT_LAYERS, DEFAULT_MAX_ITERATIONS, DEFAULT_ROUTES_PER_ITERATION,
    DEFAULT_SHOTS, DEFAULT_TIME_STEPS,
)
from utils.errors import ParameterError
from utils.logging_config import get_logger

logger = get_logger("cg")


# =============================================================================
# CONFIGURATION
# =============================================================================

class Subsolver(Enum):
    """Pricing method."""
    QAOANSATZ_SIM = "qaoansatz"
    QAOA_SIM = "qaoa"
    EXACT_ORACLE = "exact"

    @property
    def ansatz_kind(self) -> Optional[AnsatzKind]:
        return {
            Subsolver.QAOANSATZ_SIM: AnsatzKind.XY_MIXER_ANSATZ,
            Subsolver.QAOA_SIM: AnsatzKind.X_MIXER_QAOA,
        }.get(self)


@dataclass(frozen=True)
class CgConfig:
    """
    Column generation settings.

    Attributes
    ----------
    T : int
        Time steps of the pricing register (T-1 non-depot slots).
    K : int
        Maximum routes injected per iteration.
    subsolver : Subsolver
        Pricing method.
    p : int
        Ansatz layers.
    shots : int
        Measurements per pricing round.
    lambda1, lambda2, lambda3 : float
        Capacity, at-most-one-per-slot and one-hot penalty multipliers.
    convergence_eps : float
        A column is negative when its reduced cost is below -eps.
    max_iterations : int
        Hard bound on loop iterations.
    seed : int
        Root seed; each iteration derives fresh optimizer and sampling seeds.
    optimizer : OptimizerConfig
        Variational optimizer settings (its seed is overridden per iteration).
    verify_oracle : bool
        Confirm simulated convergence with exact pricing.
    warm_start : bool
        Start each iteration's optimization from the previous best angles.
    shot_expectation : bool
        Optimise the shot-estimated energy instead of the exact expectation.
    """

    T: int = DEFAULT_TIME_STEPS
    K: int = DEFAULT_ROUTES_PER_ITERATION
    subsolver: Subsolver = Subsolver.QAOANSATZ_SIM
    p: int = DEFAULT_LAYERS
    shots: int = DEFAULT_SHOTS
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    lambda3: float = DEFAULT_LAMBDA3
    convergence_eps: float = DEFAULT_CONVERGENCE_EPS
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    seed: int = 0
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    verify_oracle: bool = False
    warm_start: bool = False
    shot_expectation: bool = False

    def __post_init__(self):
        if self.T < 2:
            raise ParameterError(f"T must be >= 2, got {self.T}")
        if self.K < 1:
            raise ParameterError(f"K must be >= 1, got {self.K}")
        if self.p < 1:
            raise ParameterError(f"p must be >= 1, got {self.p}")
        if self.shots < 1:
            raise ParameterError(f"shots must be >= 1, got {self.shots}")
        if self.convergence_eps < 0:
            raise ParameterError(f"convergence_eps must be >= 0, got {self.convergence_eps}")
        if self.max_iterations < 1:
            raise ParameterError(f"max_iterations must be >= 1, got {self.max_iterations}")
        for name in ("lambda1", "lambda2", "lambda3"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")


# =============================================================================
# RESULT TYPES
# =============================================================================

Candidate = Tuple[Route, float]


@dataclass
class DecodeResult:
    """Feasible routes decoded from a sample set, best first."""
    candidates: List[Candidate]
    infeasible_count: int

    @property
    def best_reduced_cost(self) -> float:
        return self.candidates[0][1] if self.candidates else float("inf")


@dataclass
class PricingResult:
    candidates: List[Candidate]
    best_reduced_cost: float
    infeasible_count: int = 0
    opt_result: Optional[OptResult] = None
    n_qubits: int = 0


@dataclass
class CgIterationLog:
    iteration: int
    lp_objective: float
    duals: DualSolution
    min_reduced_cost: float
    routes_added: int
    wall_time: float
    infeasible_sample_count: int = 0
    stalled: bool = False

    def to_record(self) -> Dict:
        """Line-delimited log record; an infinite reduced cost becomes null."""
        return {
            "iteration": self.iteration,
            "lp_objective": self.lp_objective,
            "min_reduced_cost": (
                self.min_reduced_cost if np.isfinite(self.min_reduced_cost) else None
            ),
            "routes_added": self.routes_added,
            "infeasible_sample_count": self.infeasible_sample_count,
            "stalled": self.stalled,
            "wall_time_ms": round(self.wall_time * 1000.0, 3),
            "duals": self.duals.to_record(),
        }


@dataclass
class CgResult:
    logs: List[CgIterationLog]
    final_routes: RouteSet
    final_solution: RmpIntSolution
    converged: bool
    total_distance: float
    final_lp_objective: float
    oracle_verified: bool = False
    integrality_gap: float = 0.0

    def to_summary(self) -> Dict:
        return {
            "converged": self.converged,
            "iterations": len(self.logs),
            "total_distance": self.total_distance,
            "final_lp_objective": self.final_lp_objective,
            "integrality_gap": self.integrality_gap,
            "oracle_verified": self.oracle_verified,
            "n_routes": len(self.final_routes),
            "routes": [list(r.customers) for r in self.final_solution.selected],
        }


# =============================================================================
# DECODING
# =============================================================================

def _decode_bitstring(bits: str, instance: Instance, n_slots: int) -> Optional[Route]:
    """Route encoded by one bitstring, or None if it is infeasible."""
    n = instance.n_locations
    visits: List[int] = []
    for t in range(n_slots):
        block = bits[t * n:(t + 1) * n]
        if block.count("1") != 1:
            return None
        location = block.index("1")
        if location != 0:
            visits.append(location)
    if len(set(visits)) != len(visits):
        return None
    if sum(instance.demands[c] for c in visits) > instance.capacity:
        return None
    return Route.build(instance, visits) if visits else Route.empty()


def decode_samples(
    samples: SampleSet, instance: Instance, T: int, duals: DualSolution
) -> DecodeResult:
    """
    Turn measured bitstrings into distinct feasible routes.

    A bitstring is rejected if a slot is not one-hot, a customer repeats or
    the load exceeds the capacity. Depot slots are dropped from the visit
    sequence. Rejections are counted in shots.

    Raises
    ------
    ParameterError
        If a bitstring does not have N*(T-1) characters.
    """
    n_slots = T - 1
    expected = instance.n_locations * n_slots
    infeasible = 0
    seen: Dict[Tuple[int, ...], Candidate] = {}
    for bits, count in samples.counts.items():
        if len(bits) != expected:
            raise ParameterError(f"bitstring of length {len(bits)}, expected {expected}")
        route = _decode_bitstring(bits, instance, n_slots)
        if route is None:
            infeasible += count
            continue
        if route.customers not in seen:
            seen[route.customers] = (route, route.reduced_cost(duals))
    candidates = sorted(seen.values(), key=lambda rc: (rc[1], len(rc[0].customers), rc[0].customers))
    return DecodeResult(candidates=candidates, infeasible_count=infeasible)


# =============================================================================
# PRICING
# =============================================================================

def _derive_seeds(seed, n: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(n)]


def price_once(
    instance: Instance,
    duals: DualSolution,
    config: CgConfig,
    seed=None,
    initial_params: Optional[Params] = None,
) -> PricingResult:
    """
    Solve one pricing subproblem.

    The exact oracle returns every negative column ranked (or the empty
    route when there is none). Simulated subsolvers build the pricing
    Hamiltonian, optimise the ansatz angles, sample ``config.shots`` times
    and decode; the best reduced cost is +inf when no sample is feasible.
    """
    seed = config.seed if seed is None else seed

    if config.subsolver is Subsolver.EXACT_ORACLE:
        ranked = rank_routes_by_reduced_cost(instance, duals, config.T)
        if not ranked:
            ranked = [exact_min_reduced_cost(instance, duals, config.T)]
        return PricingResult(candidates=ranked, best_reduced_cost=ranked[0][1])

    spec = SubproblemSpec(
        instance=instance, duals=duals, T=config.T,
        lambda1=config.lambda1, lambda2=config.lambda2, lambda3=config.lambda3,
    )
    spec.validate()
    qubo = build_alim_qubo(spec)
    if config.subsolver is Subsolver.QAOA_SIM:
        qubo = add_onehot_penalty(qubo, spec)
    h_c = qubo_to_ising(qubo)
    ansatz = AnsatzConfig(
        kind=config.subsolver.ansatz_kind, p=config.p,
        n_locations=instance.n_locations, n_slots=spec.n_slots,
    )

    opt_seed, sample_seed, shot_seed = _derive_seeds(seed, 3)
    if config.shot_expectation:
        shot_rng = np.random.default_rng(shot_seed)

        def objective(params: Params) -> float:
            state = run_ansatz(ansatz, h_c, params)
            return shot_expectation(state, h_c, config.shots, int(shot_rng.integers(2**63)))
    else:
        def objective(params: Params) -> float:
            return expectation(run_ansatz(ansatz, h_c, params), h_c)

    opt_config = replace(config.optimizer, seed=opt_seed, initial_params=initial_params)
    opt = minimize(objective, config.p, opt_config)
    state = run_ansatz(ansatz, h_c, opt.best_params)
    decoded = decode_samples(sample(state, config.shots, sample_seed), instance, config.T, duals)
    logger.debug(
        "Priced %d qubits: energy=%.6f best_rc=%s feasible_routes=%d infeasible_shots=%d",
        ansatz.n_qubits, opt.best_value, decoded.best_reduced_cost,
        len(decoded.candidates), decoded.infeasible_count,
    )
    return PricingResult(
        candidates=decoded.candidates,
        best_reduced_cost=decoded.best_reduced_cost,
        infeasible_count=decoded.infeasible_count,
        opt_result=opt,
        n_qubits=ansatz.n_qubits,
    )


# =============================================================================
# COLUMN GENERATION LOOP
# =============================================================================

def _inject(routes: RouteSet, candidates: List[Candidate], K: int, eps: float) -> int:
    added = 0
    for route, reduced_cost in candidates:
        if added >= K:
            break
        if route.is_empty or reduced_cost >= -eps:
            continue
        if routes.add(route):
            added += 1
    return added


def run_cg(
    instance: Instance,
    config: CgConfig,
    on_iteration: Optional[Callable[[CgIterationLog], None]] = None,
) -> CgResult:
    """
    Run column generation to convergence or ``max_iterations``, then solve
    the integer master problem over the generated routes.

    Raises
    ------
    ParameterError
        If ``T`` exceeds the number of locations.
    """
    if config.T > max(instance.n_locations, 2):
        raise ParameterError(
            f"T={config.T} exceeds the {instance.n_locations} locations of the instance"
        )

    routes = initial_route_set(instance)
    logs: List[CgIterationLog] = []
    converged = False
    oracle_verified = config.subsolver is Subsolver.EXACT_ORACLE
    stall_streak = 0
    warm: Optional[Params] = None

    for iteration in range(1, config.max_iterations + 1):
        started = time.perf_counter()
        lp = solve_rmp_lp(routes, instance)
        pricing = price_once(
            instance, lp.duals, config,
            seed=[config.seed, iteration],
            initial_params=warm if config.warm_start else None,
        )
        if config.warm_start and pricing.opt_result is not None:
            warm = pricing.opt_result.best_params

        added = _inject(routes, pricing.candidates, config.K, config.convergence_eps)
        stalled = added == 0
        log = CgIterationLog(
            iteration=iteration,
            lp_objective=lp.objective,
            duals=lp.duals,
            min_reduced_cost=pricing.best_reduced_cost,
            routes_added=added,
            wall_time=time.perf_counter() - started,
            infeasible_sample_count=pricing.infeasible_count,
            stalled=stalled,
        )
        logs.append(log)
        if on_iteration is not None:
            on_iteration(log)
        logger.info(
            "CG iteration %d: lp=%.6f min_rc=%.6g added=%d routes=%d",
            iteration, lp.objective, pricing.best_reduced_cost, added, len(routes),
        )

        if not stalled:
            stall_streak = 0
            continue
        if config.subsolver is Subsolver.EXACT_ORACLE:
            converged = True
            break

        stall_streak += 1
        logger.warning("Pricing stalled at iteration %d (streak %d)", iteration, stall_streak)
        if config.verify_oracle:
            _, exact_rc = exact_min_reduced_cost(instance, lp.duals, config.T)
            if exact_rc >= -config.convergence_eps:
                converged = True
                oracle_verified = True
                break
            logger.warning(
                "False convergence at iteration %d: exact pricing finds reduced cost %.6g",
                iteration, exact_rc,
            )
        elif stall_streak >= 2:
            converged = True
            break

    final_lp = solve_rmp_lp(routes, instance)
    final = solve_rmp_integer(routes, instance)
    gap = final.gap_to(final_lp.objective)
    if gap > 1e-6:
        logger.warning("Integrality gap %.6g between LP %.6f and integer solution", gap, final_lp.objective)
    logger.info(
        "Column generation %s after %d iterations: %d routes, distance %.6f",
        "converged" if converged else "stopped", len(logs), len(final.selected), final.objective,
    )
    return CgResult(
        logs=logs,
        final_routes=routes,
        final_solution=final,
        converged=converged,
        total_distance=final.objective,
        final_lp_objective=final_lp.objective,
        oracle_verified=oracle_verified and converged,
        integrality_gap=gap,
    )
