"""
QCG-CVRP - Pricing QUBO and Ising Tests

Test Categories:
1. Bit ordering q = (t-1)*N + i
2. ALiM QUBO against a direct evaluation over the full x_{i,t} grid
3. One-hot penalty
4. QUBO -> Ising energy preservation
5. Qubit accounting and model export

Run with: python -m pytest tests/test_qubo.py -v
"""

import itertools
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from instance import Instance, generate_instance
from master import DualSolution, initial_route_set, solve_rmp_lp
from oracle import exact_min_reduced_cost
from qubo import (
    QuboProblem, SubproblemSpec, add_onehot_penalty, build_alim_qubo, evaluate,
    ising_energy, ising_to_document, qubit_budget, qubit_counts, qubit_index,
    qubit_location, qubo_to_document, qubo_to_ising, write_document,
)
from utils.errors import ParameterError


def _all_bits(n):
    return itertools.product((0, 1), repeat=n)


def _grid(bits, n_locations, T):
    """x[i, t] for t = 0..T-1 with the depot fixed at t = 0."""
    x = np.zeros((n_locations, T))
    x[0, 0] = 1.0
    for q, b in enumerate(bits):
        i, t = q % n_locations, q // n_locations + 1
        x[i, t] = b
    return x


def _direct_objective(spec, bits):
    """Pricing objective written out term by term over the time grid."""
    inst = spec.instance
    n, T = inst.n_locations, spec.T
    x = _grid(bits, n, T)
    d = inst.dist
    w = np.asarray(inst.demands, dtype=float)
    y = spec.duals.y
    travel = sum(
        d[i, j] * x[i, t] * x[j, (t + 1) % T]
        for t in range(T) for i in range(n) for j in range(n)
    )
    prices = -sum(y[i] * x[i, t] for t in range(T) for i in range(n))
    load = sum(w[i] * x[i, t] for t in range(T) for i in range(n))
    excess = load - inst.capacity
    capacity = spec.lambda1 * excess + spec.lambda1 * excess ** 2
    overlap = spec.lambda2 * sum(
        x[i, t] * x[k, t]
        for t in range(1, T) for i in range(n) for k in range(n) if i != k
    )
    return travel + prices + capacity + overlap


def _random_spec(seed, n_customers, T, lambdas=(1.0, 1.0, 1.0)):
    inst = generate_instance(seed, n_customers, 25, 1, 15)
    rng = np.random.default_rng(seed + 100)
    duals = DualSolution.from_customer_duals(rng.uniform(0.0, 1.5, size=n_customers))
    return SubproblemSpec(inst, duals, T, *lambdas)


def _one_hot(bits, n_locations, n_slots):
    return all(
        sum(bits[t * n_locations:(t + 1) * n_locations]) == 1 for t in range(n_slots)
    )


# =============================================================================
# BIT ORDERING
# =============================================================================

class TestQubitIndex:

    def test_layout(self):
        assert qubit_index(0, 1, 5) == 0
        assert qubit_index(4, 1, 5) == 4
        assert qubit_index(0, 2, 5) == 5
        assert qubit_index(3, 3, 5) == 13

    def test_inverse(self):
        for q in range(15):
            i, t = qubit_location(q, 5)
            assert qubit_index(i, t, 5) == q

    def test_var_index(self):
        qubo = build_alim_qubo(_random_spec(0, 2, 3))
        assert qubo.var_index[(2, 2)] == 5
        assert len(qubo.var_index) == qubo.n_vars == 6


# =============================================================================
# ALiM QUBO
# =============================================================================

class TestAlimQubo:

    @pytest.mark.parametrize("seed,n_customers,T", [(0, 2, 3), (1, 3, 3), (2, 2, 4), (3, 3, 4), (4, 4, 3)])
    def test_matches_direct_objective(self, seed, n_customers, T):
        spec = _random_spec(seed, n_customers, T, lambdas=(0.7, 1.3, 1.0))
        qubo = build_alim_qubo(spec)
        assert qubo.n_vars == (n_customers + 1) * (T - 1)
        for bits in _all_bits(qubo.n_vars):
            assert evaluate(qubo, bits) == pytest.approx(_direct_objective(spec, bits), abs=1e-9)

    def test_all_zero_bitstring_is_offset(self):
        spec = _random_spec(5, 3, 4)
        qubo = build_alim_qubo(spec)
        assert qubo.offset == pytest.approx(600.0)
        assert evaluate(qubo, [0] * qubo.n_vars) == pytest.approx(600.0)

    def test_parked_at_depot(self):
        spec = _random_spec(6, 3, 4)
        qubo = build_alim_qubo(spec)
        bits = [0] * qubo.n_vars
        for t in range(1, 4):
            bits[qubit_index(0, t, 4)] = 1
        assert evaluate(qubo, bits) == pytest.approx(600.0)

    def test_single_customer_route(self):
        spec = _random_spec(7, 3, 3)
        inst = spec.instance
        qubo = build_alim_qubo(spec)
        bits = [0] * qubo.n_vars
        bits[qubit_index(2, 1, 4)] = 1
        bits[qubit_index(0, 2, 4)] = 1
        w = inst.demands[2]
        expected = 2 * inst.dist[0, 2] - spec.duals.y[2] + (w - 25) + (w - 25) ** 2
        assert evaluate(qubo, bits) == pytest.approx(expected, abs=1e-9)

    def test_feasible_minimum_matches_exact_pricing(self):
        inst = generate_instance(8, 3, 25, 1, 15)
        duals = solve_rmp_lp(initial_route_set(inst), inst).duals
        spec = SubproblemSpec(inst, duals, 4)
        qubo = build_alim_qubo(spec)
        n, slots = inst.n_locations, 3
        best = np.inf
        for bits in _all_bits(qubo.n_vars):
            if not _one_hot(bits, n, slots):
                continue
            visits = [bits[t * n:(t + 1) * n].index(1) for t in range(slots)]
            customers = [v for v in visits if v != 0]
            if len(set(customers)) != len(customers):
                continue
            load = sum(inst.demands[c] for c in customers)
            if load > inst.capacity:
                continue
            capacity_term = (load - 25) + (load - 25) ** 2
            best = min(best, evaluate(qubo, bits) - capacity_term)
        _, exact = exact_min_reduced_cost(inst, duals, 4)
        assert best == pytest.approx(exact, abs=1e-9)

    def test_evaluate_length_mismatch(self):
        qubo = build_alim_qubo(_random_spec(0, 2, 3))
        with pytest.raises(ParameterError):
            evaluate(qubo, [0, 1])

    @pytest.mark.parametrize("kwargs", [{"T": 1}, {"lambda1": -1.0}, {"lambda2": -0.1}])
    def test_spec_validation(self, kwargs):
        inst = generate_instance(0, 2, 25, 1, 15)
        args = {"instance": inst, "duals": DualSolution.zeros(inst), "T": 3, **kwargs}
        with pytest.raises(ParameterError):
            build_alim_qubo(SubproblemSpec(**args))

    def test_dual_length_checked(self):
        inst = generate_instance(0, 3, 25, 1, 15)
        spec = SubproblemSpec(inst, DualSolution.from_customer_duals([1.0]), 3)
        with pytest.raises(ParameterError):
            spec.validate()


# =============================================================================
# ONE-HOT PENALTY
# =============================================================================

class TestOneHotPenalty:

    def test_zero_on_feasible_positive_elsewhere(self):
        spec = _random_spec(9, 2, 4, lambdas=(1.0, 1.0, 2.5))
        base = build_alim_qubo(spec)
        penalised = add_onehot_penalty(base, spec)
        for bits in _all_bits(base.n_vars):
            extra = evaluate(penalised, bits) - evaluate(base, bits)
            if _one_hot(bits, 3, 3):
                assert extra == pytest.approx(0.0, abs=1e-9)
            else:
                assert extra > 0.0

    def test_copy_leaves_base_untouched(self):
        spec = _random_spec(10, 2, 3)
        base = build_alim_qubo(spec)
        before = base.linear.copy(), dict(base.quadratic), base.offset
        add_onehot_penalty(base, spec)
        assert np.array_equal(base.linear, before[0])
        assert base.quadratic == before[1]
        assert base.offset == before[2]


# =============================================================================
# ISING
# =============================================================================

class TestIsing:

    def test_random_qubo_all_bitstrings(self):
        rng = np.random.default_rng(3)
        qubo = QuboProblem(n_vars=6, linear=rng.normal(size=6), offset=0.4)
        for a, b in itertools.combinations(range(6), 2):
            qubo.add_quadratic(a, b, rng.normal())
        ising = qubo_to_ising(qubo)
        diag = ising.diagonal()
        for bits in _all_bits(6):
            value = evaluate(qubo, bits)
            assert ising_energy(ising, bits) == pytest.approx(value, abs=1e-9)
        for k in range(64):
            bits = [(k >> q) & 1 for q in range(6)]
            assert diag[k] == pytest.approx(evaluate(qubo, bits), abs=1e-9)

    @pytest.mark.parametrize("seed,n_customers,T,penalty", [(0, 3, 4, False), (1, 3, 4, True), (2, 4, 3, True)])
    def test_pricing_hamiltonian_diagonal(self, seed, n_customers, T, penalty):
        spec = _random_spec(seed, n_customers, T)
        qubo = build_alim_qubo(spec)
        if penalty:
            qubo = add_onehot_penalty(qubo, spec)
        diag = qubo_to_ising(qubo).diagonal()
        n = qubo.n_vars
        for k in range(1 << n):
            bits = [(k >> q) & 1 for q in range(n)]
            assert diag[k] == pytest.approx(evaluate(qubo, bits), abs=1e-9)

    def test_diagonal_cached(self):
        ising = qubo_to_ising(build_alim_qubo(_random_spec(0, 2, 3)))
        assert ising.diagonal() is ising.diagonal()

    def test_add_quadratic_on_diagonal_folds_into_linear(self):
        qubo = QuboProblem(n_vars=2, linear=np.zeros(2))
        qubo.add_quadratic(1, 1, 3.0)
        assert qubo.linear[1] == 3.0
        assert qubo.quadratic == {}


# =============================================================================
# ACCOUNTING AND EXPORT
# =============================================================================

class TestAccountingAndExport:

    @pytest.mark.parametrize("n_customers,expected", [(4, (20, 29)), (5, (24, 34))])
    def test_qubit_counts(self, n_customers, expected):
        inst = generate_instance(0, n_customers, 25, 1, 15)
        assert qubit_counts(inst, 4) == expected

    def test_budget_record(self):
        inst = generate_instance(0, 4, 25, 1, 15)
        record = qubit_budget(inst, 4).to_record()
        assert record["simulated"] == 15
        assert record["alim"] < record["slack"]

    def test_counts_reject_small_T(self):
        with pytest.raises(ParameterError):
            qubit_counts(generate_instance(0, 2, 25, 1, 15), 1)

    def test_write_documents(self, tmp_path):
        spec = _random_spec(0, 2, 3)
        qubo = build_alim_qubo(spec)
        ising = qubo_to_ising(qubo)
        q_path = write_document(qubo_to_document(qubo), tmp_path / "qubo.json")
        i_path = write_document(ising_to_document(ising), tmp_path / "ising.json")
        q_doc = json.loads(q_path.read_text())
        i_doc = json.loads(i_path.read_text())
        assert q_doc["n_vars"] == 6 and len(q_doc["linear"]) == 6
        assert all(len(triple) == 3 and triple[0] < triple[1] for triple in q_doc["quadratic"])
        assert i_doc["constant"] == pytest.approx(ising.constant)
        assert len(i_doc["J"]) == len(ising.J)
