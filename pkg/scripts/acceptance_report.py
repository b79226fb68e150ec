"""
QCG-CVRP - Acceptance Report

Runs the acceptance checks end to end and prints a PASS/FAIL line per
check, followed by the per-sweep statistics the convergence checks are
based on.

Run with: python scripts/acceptance_report.py
Sweeps too: python scripts/acceptance_report.py --sweeps --workers 8
"""

import argparse
import os
import sys
import time
from datetime import datetime
from typing import List, Tuple

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from cli.experiments import ExperimentSpec, run_experiment, summarize
from controller import CgConfig, Subsolver, run_cg
from instance import generate_instance
from oracle import complete_lp_objective, enumerate_routes, exact_cvrp
from qubo import IsingHamiltonian, qubit_counts
from simulator import AnsatzConfig, AnsatzKind, Params, one_hot_leakage, run_ansatz
from utils.logging_config import setup_logging


class Colors:
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    RED = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'


def print_header(text: str):
    print(f"\n{Colors.HEADER}{Colors.BOLD}{'='*70}{Colors.ENDC}")
    print(f"{Colors.HEADER}{Colors.BOLD}{text.center(70)}{Colors.ENDC}")
    print(f"{Colors.HEADER}{Colors.BOLD}{'='*70}{Colors.ENDC}\n")


def print_subheader(text: str):
    print(f"\n{Colors.CYAN}{'-'*50}{Colors.ENDC}")
    print(f"{Colors.CYAN}{text}{Colors.ENDC}")
    print(f"{Colors.CYAN}{'-'*50}{Colors.ENDC}")


def print_success(text: str):
    print(f"{Colors.GREEN}✓ PASS: {text}{Colors.ENDC}")


def print_fail(text: str):
    print(f"{Colors.RED}✗ FAIL: {text}{Colors.ENDC}")


def print_info(text: str):
    print(f"{Colors.BLUE}ℹ {text}{Colors.ENDC}")


class Suite:
    """Counts checks; each ``check_*`` method records one result."""

    def __init__(self):
        self.tests_passed = 0
        self.tests_failed = 0

    def record(self, ok: bool, message: str):
        if ok:
            print_success(message)
            self.tests_passed += 1
        else:
            print_fail(message)
            self.tests_failed += 1

    def run_all(self) -> Tuple[int, int]:
        for name in sorted(dir(self)):
            if name.startswith("check_"):
                getattr(self, name)()
        return self.tests_passed, self.tests_failed


# =============================================================================
# EXACT PRICING
# =============================================================================

class ExactPricingSuite(Suite):

    def __init__(self):
        super().__init__()
        self.cases = [(n, seed) for n in (4, 5, 6) for seed in range(10)]

    def check_optimality_and_certificate(self):
        print_subheader("Column generation with exact pricing")
        started = time.perf_counter()
        lp_ok = matches = certified = 0
        for n, seed in self.cases:
            inst = generate_instance(seed, n, 25, 1, 15)
            result = run_cg(inst, CgConfig(T=inst.n_locations, subsolver=Subsolver.EXACT_ORACLE))
            lp_ok += result.converged and abs(result.final_lp_objective - complete_lp_objective(inst)) <= 1e-6
            oracle = exact_cvrp(inst).objective
            if abs(result.total_distance - oracle) <= 1e-9:
                matches += 1
            else:
                print_info(f"N={n} seed={seed}: {result.total_distance:.6f} vs exact {oracle:.6f}")
            y = result.logs[-1].duals.y
            certified += all(
                sum(y[c] for c in r.customers) <= r.distance + 1e-6 for r in enumerate_routes(inst)
            )
        elapsed = time.perf_counter() - started
        total = len(self.cases)
        self.record(lp_ok == total, f"complete LP optimum reached on {lp_ok}/{total}")
        self.record(matches >= 27, f"integer solution equals exact CVRP on {matches}/{total}")
        self.record(certified == total, f"dual certificate holds on {certified}/{total}")
        self.record(elapsed < 60, f"runtime {elapsed:.1f}s")


# =============================================================================
# SIMULATOR AND ACCOUNTING
# =============================================================================

class SimulatorSuite(Suite):

    def check_xy_mixer_feasibility(self):
        print_subheader("XY-mixer ansatz leakage (N=4, T=4)")
        rng = np.random.default_rng(11)
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=2, n_locations=5, n_slots=3)
        n = config.n_qubits
        worst = 0.0
        for _ in range(100):
            J = {(a, b): rng.normal() for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3}
            h_c = IsingHamiltonian(h=rng.normal(size=n), J=J)
            params = Params(gammas=tuple(rng.uniform(-np.pi, np.pi, 2)), betas=tuple(rng.uniform(-np.pi, np.pi, 2)))
            worst = max(worst, one_hot_leakage(run_ansatz(config, h_c, params), config))
        self.record(worst <= 1e-10, f"max leakage {worst:.2e} over 100 draws")

    def check_qubit_accounting(self):
        print_subheader("Qubit accounting")
        for n_customers, expected in ((4, (20, 29)), (5, (24, 34))):
            got = qubit_counts(generate_instance(0, n_customers, 25, 1, 15), 4)
            self.record(got == expected, f"{n_customers + 1} locations, T=4 -> {got}")


# =============================================================================
# SWEEPS
# =============================================================================

class SweepSuite(Suite):

    def __init__(self, workers: int):
        super().__init__()
        self.workers = workers

    def _runs(self, experiment: str, **overrides):
        spec = ExperimentSpec.preset(experiment, samples_per_point=10, **overrides)
        _, runs = summarize(run_experiment(spec, workers=self.workers))
        print(runs.to_string(index=False))
        return runs.set_index("sweep_value")

    def check_compare_mixers(self):
        print_subheader("Mixer comparison (4 customers)")
        runs = self._runs("compare_mixers")
        xy, x = runs.loc["qaoansatz"], runs.loc["qaoa"]
        print_info(f"reached within 4 iterations: qaoansatz {xy['reached_by_4']}, qaoa {x['reached_by_4']}")
        self.record(xy["reached_by_10"] > x["reached_by_10"], "XY mixer converges on more instances")
        self.record(xy["reached_by_10"] >= 7, f"XY mixer converges on {xy['reached_by_10']}/10")

    def check_layer_sweep(self):
        print_subheader("Layer sweep (5 customers)")
        it = self._runs("layer_sweep")["mean_iterations"]
        self.record(it[2] <= it[1], f"p=2 mean {it[2]:.2f} <= p=1 mean {it[1]:.2f}")
        self.record(abs(it[3] - it[2]) <= 1.0, f"p=3 mean {it[3]:.2f} within 1 of p=2")

    def check_time_sweep(self):
        print_subheader("Time-step sweep (5 customers)")
        for subsolver, gate in ((Subsolver.EXACT_ORACLE, 8), (Subsolver.QAOANSATZ_SIM, 6)):
            base = CgConfig(T=4, subsolver=subsolver)
            spec = ExperimentSpec.preset("time_sweep", values=(4, 5), samples_per_point=10, base=base)
            frame = run_experiment(spec, workers=self.workers)
            ok = frame[frame["status"] == "ok"]
            final = ok.groupby(["sweep_value", "seed"])["final_distance"].last().unstack(0)
            same = int(((final[4] - final[5]).abs() <= 1e-6).sum())
            self.record(same >= gate, f"{subsolver.value}: T=4 matches T=5 on {same}/10")

    def check_k_sweep(self):
        print_subheader("Routes-per-iteration sweep (6 customers)")
        it = self._runs("k_sweep")["mean_iterations"]
        self.record(it[10] <= it[5] <= it[1], f"K=10 {it[10]:.2f} <= K=5 {it[5]:.2f} <= K=1 {it[1]:.2f}")
        self.record(it[10] < it[1], "K=10 strictly faster than K=1")


def main(argv: List[str] = None) -> bool:
    parser = argparse.ArgumentParser(description="QCG-CVRP acceptance report")
    parser.add_argument("--sweeps", action="store_true", help="Also run the convergence sweeps")
    parser.add_argument("--workers", type=int, default=None)
    args = parser.parse_args(argv)
    setup_logging("WARNING")

    print_header("QCG-CVRP - ACCEPTANCE REPORT")
    print_info(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")

    suites = [("Exact pricing", ExactPricingSuite()), ("Simulator", SimulatorSuite())]
    if args.sweeps:
        suites.append(("Sweeps", SweepSuite(args.workers)))

    results = []
    for name, suite in suites:
        passed, failed = suite.run_all()
        results.append((name, passed, failed))

    print_header("SUMMARY")
    for name, passed, failed in results:
        status = Colors.GREEN + "✓" if failed == 0 else Colors.RED + "✗"
        print(f"  {status} {name}: {passed} passed, {failed} failed{Colors.ENDC}")
    total_failed = sum(f for _, _, f in results)
    print_info(f"TOTAL: {sum(p for _, p, _ in results)} passed, {total_failed} failed")
    return total_failed == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
