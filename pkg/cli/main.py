"""
QCG-CVRP - Command Line Interface

Usage:
    python -m cli.main gen --customers 5 --seed 7 --out inst.json
    python -m cli.main solve inst.json --subsolver qaoansatz --p 2 --T 4 --K 10
    python -m cli.main oracle inst.json
    python -m cli.main qubits --customers 5 --T 2 3 4 5
    python -m cli.main export inst.json --T 4 --out runs/pricing
    python -m cli.main experiment k_sweep --customers 6 --out runs/k_sweep.csv
    python -m cli.main summarize runs/k_sweep.csv

Exit codes: 0 ok, 1 internal, 2 usage, 3 I/O, 4 infeasible, 5 size guard.
"""

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

import pandas as pd

from controller import CgConfig, Subsolver, run_cg
from instance import generate_instance, load_instance, save_instance
from master import initial_route_set, solve_rmp_lp
from optimizer import METHODS, OptimizerConfig
from oracle import complete_lp_objective, enumerate_routes, exact_cvrp
from qubo import (
    SubproblemSpec, add_onehot_penalty, build_alim_qubo, ising_to_document,
    qubit_budget, qubo_to_document, qubo_to_ising, write_document,
)
from utils.config import (
    DEFAULT_CAPACITY, DEFAULT_CONVERGENCE_EPS, DEFAULT_DEMAND_HI, DEFAULT_DEMAND_LO,
    DEFAULT_LAMBDA1, DEFAULT_LAMBDA2, DEFAULT_LAMBDA3, DEFAULT_LAYERS, DEFAULT_MAX_EVALS,
    DEFAULT_MAX_ITERATIONS, DEFAULT_ROUTES_PER_ITERATION, DEFAULT_SAMPLES_PER_POINT,
    DEFAULT_SHOTS, DEFAULT_TIME_STEPS, ORACLE_CVRP_MAX_LOCATIONS, OUTPUT_DIR,
)
from utils.errors import EXIT_OK, QcgError, exit_code_for
from utils.logging_config import get_logger, setup_logging

from .experiments import PRESETS, VARY_CHOICES, ExperimentSpec, parse_values, run_experiment, summarize
from .sinks import JsonlSink, write_csv, write_json

logger = get_logger("cli")

SUBSOLVER_CHOICES = [s.value for s in Subsolver]


# =============================================================================
# SHARED FLAGS
# =============================================================================

def _add_instance_flags(parser: argparse.ArgumentParser, customers_required: bool = False) -> None:
    parser.add_argument("--customers", type=int, default=None, required=customers_required,
                        help="Number of customers")
    parser.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY, help="Vehicle capacity W")
    parser.add_argument("--demand-lo", type=int, default=DEFAULT_DEMAND_LO)
    parser.add_argument("--demand-hi", type=int, default=DEFAULT_DEMAND_HI)


def _add_solver_flags(parser: argparse.ArgumentParser, T_default: Optional[int] = DEFAULT_TIME_STEPS) -> None:
    parser.add_argument("--subsolver", choices=SUBSOLVER_CHOICES, default=Subsolver.QAOANSATZ_SIM.value)
    parser.add_argument("--p", type=int, default=DEFAULT_LAYERS, help="Ansatz layers")
    parser.add_argument("--T", type=int, default=T_default, help="Time steps of the pricing register")
    parser.add_argument("--K", type=int, default=DEFAULT_ROUTES_PER_ITERATION, help="Routes injected per iteration")
    parser.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    parser.add_argument("--lambda1", type=float, default=DEFAULT_LAMBDA1)
    parser.add_argument("--lambda2", type=float, default=DEFAULT_LAMBDA2)
    parser.add_argument("--lambda3", type=float, default=DEFAULT_LAMBDA3)
    parser.add_argument("--eps", type=float, default=DEFAULT_CONVERGENCE_EPS, help="Convergence tolerance")
    parser.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERATIONS)
    parser.add_argument("--optimizer", choices=METHODS, default="nelder-mead")
    parser.add_argument("--max-evals", type=int, default=DEFAULT_MAX_EVALS)
    parser.add_argument("--restarts", type=int, default=0)
    parser.add_argument("--warm-start", action="store_true", help="Reuse angles across CG iterations")
    parser.add_argument("--verify-oracle", action="store_true", help="Confirm convergence by exact pricing")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact-expectation", dest="shot_expectation", action="store_false")
    mode.add_argument("--shot-expectation", dest="shot_expectation", action="store_true")
    parser.set_defaults(shot_expectation=False)


def _config_from_args(args: argparse.Namespace, seed: int, T: Optional[int] = None) -> CgConfig:
    return CgConfig(
        T=args.T if T is None else T,
        K=args.K,
        subsolver=Subsolver(args.subsolver),
        p=args.p,
        shots=args.shots,
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        lambda3=args.lambda3,
        convergence_eps=args.eps,
        max_iterations=args.max_iters,
        seed=seed,
        optimizer=OptimizerConfig(
            max_evals=args.max_evals, method=args.optimizer, restarts=args.restarts, seed=seed,
        ),
        verify_oracle=args.verify_oracle,
        warm_start=args.warm_start,
        shot_expectation=args.shot_expectation,
    )


def _format_routes(routes) -> str:
    return "\n".join(f"  {r}  (load {r.load}, distance {r.distance:.6f})" for r in routes)


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def cmd_gen(args: argparse.Namespace) -> int:
    instance = generate_instance(
        args.seed, args.customers, args.capacity, args.demand_lo, args.demand_hi
    )
    path = save_instance(instance, args.out)
    print(path)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    config = _config_from_args(args, args.seed)
    out = Path(args.out)

    started = time.perf_counter()
    with JsonlSink(out / "iterations.jsonl") as sink:
        result = run_cg(instance, config, on_iteration=lambda log: sink.write(log.to_record()))
    wall_time = time.perf_counter() - started

    summary = {
        "instance": str(args.instance),
        "subsolver": config.subsolver.value,
        "T": config.T, "p": config.p, "K": config.K, "seed": config.seed,
        **result.to_summary(),
        "wall_time_s": round(wall_time, 3),
    }
    if instance.n_locations <= ORACLE_CVRP_MAX_LOCATIONS:
        oracle = exact_cvrp(instance).objective
        summary["oracle_distance"] = oracle
        summary["matches_oracle"] = bool(abs(result.total_distance - oracle) <= 1e-9)
        if not summary["matches_oracle"]:
            logger.warning(
                "Final distance %.6f differs from exact CVRP %.6f (integrality gap %.6g)",
                result.total_distance, oracle, result.integrality_gap,
            )
    write_json(summary, out / "summary.json")

    print(f"converged={str(result.converged).lower()} iterations={len(result.logs)} "
          f"distance={result.total_distance:.6f}")
    print(_format_routes(result.final_solution.selected))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    enumerated = enumerate_routes(instance)
    solution = exact_cvrp(instance)
    record = {
        "feasible_routes": len(enumerated),
        "complete_lp_objective": complete_lp_objective(instance),
        "distance": solution.objective,
        "routes": [list(r.customers) for r in solution.selected],
    }
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(f"feasible routes: {record['feasible_routes']}")
        print(f"complete LP objective: {record['complete_lp_objective']:.6f}")
        print(f"exact CVRP distance: {solution.objective:.6f}")
        print(_format_routes(solution.selected))
    return EXIT_OK


def cmd_qubits(args: argparse.Namespace) -> int:
    if args.instance:
        instance = load_instance(args.instance)
    else:
        instance = generate_instance(0, args.customers or 5, args.capacity, 1, 1)
    frame = pd.DataFrame([qubit_budget(instance, T).to_record() for T in args.T])
    print(frame.to_string(index=False))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    """Pricing model at the singleton-route duals, as JSON."""
    instance = load_instance(args.instance)
    duals = solve_rmp_lp(initial_route_set(instance), instance).duals
    spec = SubproblemSpec(
        instance=instance, duals=duals, T=args.T,
        lambda1=args.lambda1, lambda2=args.lambda2, lambda3=args.lambda3,
    )
    spec.validate()
    qubo = build_alim_qubo(spec)
    if args.onehot_penalty:
        qubo = add_onehot_penalty(qubo, spec)
    out = Path(args.out)
    print(write_document(qubo_to_document(qubo), out / "qubo.json"))
    print(write_document(ising_to_document(qubo_to_ising(qubo)), out / "ising.json"))
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    preset = PRESETS[args.experiment]
    config = _config_from_args(args, args.solver_seed, T=preset.T if args.T is None else args.T)
    overrides = {
        "capacity": args.capacity,
        "demand_lo": args.demand_lo,
        "demand_hi": args.demand_hi,
        "samples_per_point": args.samples,
        "seed": args.seed,
        "vary": args.vary,
        "base": config,
    }
    if args.customers is not None:
        overrides["n_customers"] = args.customers
    values = parse_values(args.experiment, args.values)
    if values is not None:
        overrides["values"] = values
    spec = ExperimentSpec.preset(args.experiment, **overrides)

    frame = run_experiment(spec, workers=args.workers)
    out = args.out or str(Path(OUTPUT_DIR) / f"{args.experiment}.csv")
    print(write_csv(frame, out))
    return EXIT_OK


def cmd_summarize(args: argparse.Namespace) -> int:
    frame = pd.read_csv(args.csv)
    steps, runs = summarize(frame)
    print(runs.to_string(index=False))
    if args.steps:
        print()
        print(steps.to_string(index=False))
    if args.out:
        out = Path(args.out)
        write_csv(steps, out / "steps.csv")
        write_csv(runs, out / "runs.csv")
    return EXIT_OK


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcg-cvrp",
        description="Column generation for CVRP with simulated QAOA pricing",
    )
    parser.add_argument("--log-level", default=None, help="Overrides QCG_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="Generate a random instance")
    _add_instance_flags(p, customers_required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="Instance JSON path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="Run column generation on an instance")
    p.add_argument("instance", help="Instance JSON path")
    _add_solver_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=str(Path(OUTPUT_DIR) / "solve"), help="Output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="Exact CVRP and route enumeration")
    p.add_argument("instance", help="Instance JSON path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("qubits", help="Qubit counts per encoding")
    p.add_argument("instance", nargs="?", default=None)
    _add_instance_flags(p)
    p.add_argument("--T", type=int, nargs="+", default=[DEFAULT_TIME_STEPS])
    p.set_defaults(func=cmd_qubits)

    p = sub.add_parser("export", help="Write the pricing QUBO and Ising model")
    p.add_argument("instance", help="Instance JSON path")
    p.add_argument("--T", type=int, default=DEFAULT_TIME_STEPS)
    p.add_argument("--lambda1", type=float, default=DEFAULT_LAMBDA1)
    p.add_argument("--lambda2", type=float, default=DEFAULT_LAMBDA2)
    p.add_argument("--lambda3", type=float, default=DEFAULT_LAMBDA3)
    p.add_argument("--onehot-penalty", action="store_true", help="Add the X-mixer one-hot penalty")
    p.add_argument("--out", required=True, help="Output directory")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("experiment", help="Run a parameter sweep")
    p.add_argument("experiment", choices=sorted(PRESETS))
    _add_instance_flags(p)
    _add_solver_flags(p, T_default=None)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES_PER_POINT, help="Samples per sweep value")
    p.add_argument("--seed", type=int, default=0, help="Base instance seed")
    p.add_argument("--solver-seed", type=int, default=0, help="Base solver seed")
    p.add_argument("--values", default=None, help="Comma-separated sweep values")
    p.add_argument("--vary", choices=VARY_CHOICES, default="instance")
    p.add_argument("--workers", type=int, default=None, help="Overrides QCG_WORKERS")
    p.add_argument("--out", default=None, help="CSV path")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("summarize", help="Per-step and per-run statistics of a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--steps", action="store_true", help="Also print the per-step table")
    p.add_argument("--out", default=None, help="Directory for steps.csv and runs.csv")
    p.set_defaults(func=cmd_summarize)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK

    setup_logging(args.log_level)
    try:
        return args.func(args)
    except (QcgError, OSError) as exc:
        code = exit_code_for(exc)
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
