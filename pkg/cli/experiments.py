"""
QCG-CVRP - Experiment Sweeps

Four sweeps, each a grid of (sweep value x sample) column generation runs:
    compare_mixers   subsolver in {qaoa, qaoansatz}, 4 customers, T=4
    layer_sweep      p in {1, 2, 3}, 5 customers
    time_sweep       T in {2, 3, 4, 5}, 5 customers, distance vs exact CVRP
    k_sweep          K in {1, 5, 10}, 6 customers, T=4

Runs are independent and go to a process pool. Rows come back to the parent
process, are ordered by (sweep value, sample) and written once.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from controller import CgConfig, Subsolver, run_cg
from instance import generate_instance
from oracle import exact_cvrp
from utils.config import (
    DEFAULT_CAPACITY, DEFAULT_DEMAND_HI, DEFAULT_DEMAND_LO,
    DEFAULT_SAMPLES_PER_POINT, ORACLE_CVRP_MAX_LOCATIONS, SCHEMA_VERSION, WORKERS,
)
from utils.errors import ParameterError, QcgError
from utils.logging_config import get_logger

from .sinks import rows_to_frame

logger = get_logger("cli")

CONVERGED_RC = -1e-6


@dataclass(frozen=True)
class SweepPreset:
    parameter: str
    values: Tuple
    n_customers: int
    T: int


PRESETS: Dict[str, SweepPreset] = {
    "compare_mixers": SweepPreset("subsolver", ("qaoa", "qaoansatz"), 4, 4),
    "layer_sweep": SweepPreset("p", (1, 2, 3), 5, 4),
    "time_sweep": SweepPreset("T", (2, 3, 4, 5), 5, 4),
    "k_sweep": SweepPreset("K", (1, 5, 10), 6, 4),
}

VARY_CHOICES = ("instance", "solver")


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One sweep.

    ``vary="instance"`` draws a new instance per sample (instance seed
    ``seed + k``) with a fixed solver seed; ``vary="solver"`` keeps one
    instance and changes the solver seed instead.
    """

    experiment: str
    values: Tuple
    n_customers: int
    capacity: int = DEFAULT_CAPACITY
    demand_lo: int = DEFAULT_DEMAND_LO
    demand_hi: int = DEFAULT_DEMAND_HI
    samples_per_point: int = DEFAULT_SAMPLES_PER_POINT
    seed: int = 0
    vary: str = "instance"
    base: CgConfig = field(default_factory=CgConfig)

    def __post_init__(self):
        if self.experiment not in PRESETS:
            raise ParameterError(
                f"unknown experiment {self.experiment!r}, expected one of {sorted(PRESETS)}"
            )
        if not self.values:
            raise ParameterError("sweep values must be non-empty")
        if self.samples_per_point < 1:
            raise ParameterError(f"samples_per_point must be >= 1, got {self.samples_per_point}")
        if self.n_customers < 1:
            raise ParameterError(f"n_customers must be >= 1, got {self.n_customers}")
        if self.vary not in VARY_CHOICES:
            raise ParameterError(f"vary must be one of {VARY_CHOICES}, got {self.vary!r}")
        for value in self.values:
            self.config_for(value)

    @property
    def parameter(self) -> str:
        return PRESETS[self.experiment].parameter

    def config_for(self, value) -> CgConfig:
        if self.parameter == "subsolver":
            try:
                return replace(self.base, subsolver=Subsolver(value))
            except ValueError as exc:
                raise ParameterError(f"unknown subsolver {value!r}") from exc
        return replace(self.base, **{self.parameter: int(value)})

    def seeds_for(self, sample: int) -> Tuple[int, int]:
        """(instance_seed, solver_seed) of the k-th sample."""
        if self.vary == "instance":
            return self.seed + sample, self.base.seed
        return self.seed, self.base.seed + sample

    @classmethod
    def preset(cls, experiment: str, **overrides) -> "ExperimentSpec":
        if experiment not in PRESETS:
            raise ParameterError(
                f"unknown experiment {experiment!r}, expected one of {sorted(PRESETS)}"
            )
        p = PRESETS[experiment]
        base = overrides.pop("base", None) or CgConfig(T=p.T)
        overrides.setdefault("values", p.values)
        overrides.setdefault("n_customers", p.n_customers)
        return cls(experiment=experiment, base=base, **overrides)


def parse_values(experiment: str, raw: Optional[str]) -> Optional[Tuple]:
    """Comma-separated sweep values for ``--values``."""
    if raw is None:
        return None
    items = [v.strip() for v in raw.split(",") if v.strip()]
    if PRESETS[experiment].parameter == "subsolver":
        return tuple(items)
    try:
        return tuple(int(v) for v in items)
    except ValueError as exc:
        raise ParameterError(f"sweep values must be integers, got {raw!r}") from exc


# =============================================================================
# SINGLE RUN (executed in worker processes)
# =============================================================================

def run_point(spec: ExperimentSpec, value, sample: int) -> List[Dict]:
    """One column generation run; one row per iteration, or one status row on failure."""
    instance_seed, solver_seed = spec.seeds_for(sample)
    config = replace(spec.config_for(value), seed=solver_seed)
    common = {
        "schema_version": SCHEMA_VERSION,
        "experiment": spec.experiment,
        "sweep_value": value,
        "seed": instance_seed if spec.vary == "instance" else solver_seed,
        "instance_seed": instance_seed,
        "solver_seed": solver_seed,
        "subsolver": config.subsolver.value,
        "n_customers": spec.n_customers,
        "T": config.T,
        "p": config.p,
        "K": config.K,
    }
    try:
        instance = generate_instance(
            instance_seed, spec.n_customers, spec.capacity, spec.demand_lo, spec.demand_hi
        )
        result = run_cg(instance, config)
        oracle_distance = (
            exact_cvrp(instance).objective
            if instance.n_locations <= ORACLE_CVRP_MAX_LOCATIONS else None
        )
    except QcgError as exc:
        logger.warning(
            "%s run %s=%s sample %d failed: %s", spec.experiment, spec.parameter, value, sample, exc
        )
        return [{**common, "status": type(exc).__name__}]

    return [
        {
            **common,
            "iteration": log.iteration,
            "min_reduced_cost": log.min_reduced_cost,
            "lp_objective": log.lp_objective,
            "routes_added": log.routes_added,
            "final_distance": result.total_distance,
            "oracle_distance": oracle_distance,
            "converged": result.converged,
            "status": "ok",
        }
        for log in result.logs
    ]


def _run_point_args(args):
    return run_point(*args)


# =============================================================================
# SWEEP
# =============================================================================

def run_experiment(spec: ExperimentSpec, workers: Optional[int] = None) -> pd.DataFrame:
    """Run every (value, sample) pair and return the tidy dataset."""
    workers = WORKERS if workers is None else workers
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    jobs = [
        (spec, value, sample)
        for value in spec.values
        for sample in range(spec.samples_per_point)
    ]
    logger.info(
        "Experiment %s: %d runs over %s=%s with %d worker(s)",
        spec.experiment, len(jobs), spec.parameter, list(spec.values), workers,
    )
    if workers == 1:
        results = [_run_point_args(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point_args, jobs))
    rows = [row for run_rows in results for row in run_rows]
    failed = sum(1 for run_rows in results if run_rows[0]["status"] != "ok")
    if failed:
        logger.warning("Experiment %s: %d of %d runs failed", spec.experiment, failed, len(jobs))
    return rows_to_frame(rows)


# =============================================================================
# SUMMARIES
# =============================================================================

def _iterations_to_convergence(run: pd.DataFrame) -> float:
    """First iteration whose minimum reduced cost is finite and >= -1e-6, else NaN."""
    rc = run["min_reduced_cost"]
    reached = run.loc[np.isfinite(rc) & (rc >= CONVERGED_RC), "iteration"]
    return float(reached.min()) if len(reached) else np.nan


def summarize(frame: pd.DataFrame) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Per-step and per-run statistics of an experiment dataset.

    Returns
    -------
    steps : DataFrame
        Mean and standard deviation of ``min_reduced_cost`` and
        ``lp_objective`` per (sweep_value, iteration): the error-bar series.
        Iterations without a feasible sample (infinite reduced cost) are
        left out of the reduced-cost statistics and counted in
        ``infeasible_steps``.
    runs : DataFrame
        Per sweep value: run counts, mean/std iterations until the minimum
        reduced cost is first finite and >= -1e-6 (a run that never gets
        there counts with its last iteration and in ``unreached_runs``),
        how many runs got there within 4 and 10 iterations, mean final
        distance and how many runs match the exact CVRP distance.
    """
    ok = frame[frame["status"] == "ok"].copy()
    ok["min_reduced_cost"] = pd.to_numeric(ok["min_reduced_cost"], errors="coerce")
    # no feasible sample: no reduced cost to average
    ok["finite_rc"] = ok["min_reduced_cost"].where(np.isfinite(ok["min_reduced_cost"]))

    steps = (
        ok.groupby(["sweep_value", "iteration"])
        .agg(
            min_rc_mean=("finite_rc", "mean"),
            min_rc_std=("finite_rc", "std"),
            infeasible_steps=("finite_rc", lambda s: int(s.isna().sum())),
            lp_mean=("lp_objective", "mean"),
            lp_std=("lp_objective", "std"),
            runs=("seed", "count"),
        )
        .reset_index()
    )

    per_run = []
    for (value, seed, solver_seed), run in ok.groupby(["sweep_value", "seed", "solver_seed"]):
        final = run.iloc[-1]
        oracle = final["oracle_distance"]
        reached = _iterations_to_convergence(run)
        last = float(run["iteration"].max())
        per_run.append({
            "sweep_value": value,
            "seed": seed,
            "iterations_to_convergence": reached,
            "censored_iterations": last if np.isnan(reached) else reached,
            "iterations": int(last),
            "converged": bool(final["converged"]),
            "final_distance": float(final["final_distance"]),
            "matches_oracle": bool(pd.notna(oracle) and abs(final["final_distance"] - oracle) <= 1e-6),
        })
    per_run = pd.DataFrame(per_run, columns=[
        "sweep_value", "seed", "iterations_to_convergence", "censored_iterations", "iterations",
        "converged", "final_distance", "matches_oracle",
    ])

    failed = frame[frame["status"] != "ok"].groupby("sweep_value").size()
    runs = (
        per_run.groupby("sweep_value")
        .agg(
            runs=("seed", "count"),
            converged_runs=("converged", "sum"),
            mean_iterations=("censored_iterations", "mean"),
            std_iterations=("censored_iterations", "std"),
            unreached_runs=("iterations_to_convergence", lambda s: int(s.isna().sum())),
            reached_by_4=("iterations_to_convergence", lambda s: int((s <= 4).sum())),
            reached_by_10=("iterations_to_convergence", lambda s: int((s <= 10).sum())),
            mean_final_distance=("final_distance", "mean"),
            matches_oracle=("matches_oracle", "sum"),
        )
        .reset_index()
    )
    runs["failed_runs"] = runs["sweep_value"].map(failed).fillna(0).astype(int)
    return steps, runs
