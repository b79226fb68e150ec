"""
QCG-CVRP - Statevector Simulator Tests

Every fast path is compared against dense operators built here from
Kronecker products and ``scipy.linalg.expm``.

Test Categories:
1. Statevector model and bit ordering
2. Phase separator and X mixer
3. XY ring mixer (exactness, Hamming-weight conservation)
4. Full ansatz against a dense circuit
5. Expectation values and sampling

Run with: python -m pytest tests/test_simulator.py -v
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest
from scipy.linalg import expm

from instance import generate_instance
from master import initial_route_set, solve_rmp_lp
from qubo import IsingHamiltonian, SubproblemSpec, build_alim_qubo, qubo_to_ising
from simulator import (
    AnsatzConfig, AnsatzKind, Params, Statevector, apply_phase_separator,
    apply_x_mixer, apply_xy_ring_mixer, bitstring, expectation, index_from_string,
    one_hot_leakage, prepare_initial_state, ring_pairs, run_ansatz, sample,
    shot_expectation, xy_ring_hamiltonian, xy_ring_unitary,
)
from utils.config import MAX_QUBITS
from utils.errors import GuardError, ParameterError, SimulationError

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


# =============================================================================
# DENSE ORACLES
# =============================================================================

def _on_qubits(ops, n):
    """Dense operator with ops[q] on qubit q; qubit 0 is the least significant bit."""
    out = np.eye(1)
    for q in reversed(range(n)):
        out = np.kron(out, ops.get(q, I2))
    return out


def _dense_x_mixer(n):
    return sum(_on_qubits({q: X}, n) for q in range(n))


def _dense_xy_block(n_block, offset, n_total):
    if n_block == 2:
        edges = [(0, 1), (1, 0)]
    else:
        edges = [(i, (i + 1) % n_block) for i in range(n_block)]
    h = np.zeros((1 << n_total, 1 << n_total), dtype=complex)
    for a, b in edges:
        a, b = a + offset, b + offset
        h += 0.5 * (_on_qubits({a: X, b: X}, n_total) + _on_qubits({a: Y, b: Y}, n_total))
    return h


def _dense_xy(config):
    n = config.n_qubits
    return sum(
        _dense_xy_block(config.n_locations, (t - 1) * config.n_locations, n)
        for t in range(1, config.n_slots + 1)
    )


def _dense_cost(h_c):
    n = h_c.n_qubits
    h = h_c.constant * np.eye(1 << n, dtype=complex)
    for q in range(n):
        h += h_c.h[q] * _on_qubits({q: Z}, n)
    for (a, b), c in h_c.J.items():
        h += c * _on_qubits({a: Z, b: Z}, n)
    return h


def _random_state(n, rng):
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return Statevector(n, amps / np.linalg.norm(amps))


def _random_hamiltonian(n, rng):
    J = {(a, b): rng.normal() for a in range(n) for b in range(a + 1, n) if rng.random() < 0.6}
    return IsingHamiltonian(h=rng.normal(size=n), J=J, constant=rng.normal())


def _pricing_hamiltonian(seed, n_customers, T):
    inst = generate_instance(seed, n_customers, 25, 1, 15)
    duals = solve_rmp_lp(initial_route_set(inst), inst).duals
    return inst, qubo_to_ising(build_alim_qubo(SubproblemSpec(inst, duals, T)))


# =============================================================================
# STATEVECTOR MODEL
# =============================================================================

class TestStatevector:

    def test_basis_and_uniform(self):
        assert Statevector.basis(3, 5).probabilities()[5] == 1.0
        uniform = Statevector.uniform(4)
        assert np.allclose(uniform.probabilities(), 1 / 16)
        assert uniform.norm_error() < 1e-12

    def test_qubit_cap(self):
        with pytest.raises(GuardError):
            Statevector.uniform(MAX_QUBITS + 1)

    def test_shape_checked(self):
        with pytest.raises(SimulationError):
            Statevector(2, np.ones(3))

    def test_norm_drift_detected(self):
        with pytest.raises(SimulationError):
            Statevector(1, np.array([2.0, 0.0])).validate()

    def test_printed_bitstrings(self):
        assert bitstring(1, 3) == "100"
        assert bitstring(6, 3) == "011"
        assert index_from_string("100") == 1
        assert index_from_string(bitstring(13, 5)) == 13

    def test_params_vector(self):
        params = Params(gammas=(0.1, 0.2), betas=(0.3, 0.4))
        assert list(params.to_vector()) == [0.1, 0.2, 0.3, 0.4]
        assert Params.from_vector([0.1, 0.2, 0.3, 0.4], 2) == params
        assert Params.default(3).gammas == (0.01, 0.01, 0.01)
        with pytest.raises(ParameterError):
            Params.from_vector([0.1, 0.2, 0.3], 2)
        with pytest.raises(ParameterError):
            Params(gammas=(0.1,), betas=())

    def test_register_layout(self):
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=3, n_slots=2)
        assert config.register_layout == {1: range(0, 3), 2: range(3, 6)}
        assert config.n_qubits == 6
        with pytest.raises(ParameterError):
            AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=0, n_locations=3, n_slots=2)


# =============================================================================
# PHASE SEPARATOR AND X MIXER
# =============================================================================

class TestPhaseAndXMixer:

    def test_phase_separator_matches_dense(self):
        rng = np.random.default_rng(0)
        h_c = _random_hamiltonian(4, rng)
        state = _random_state(4, rng)
        expected = expm(-1j * 0.37 * _dense_cost(h_c)) @ state.amplitudes
        apply_phase_separator(state, 0.37, h_c)
        assert np.allclose(state.amplitudes, expected, atol=1e-10)

    def test_phase_separator_dimension_check(self):
        rng = np.random.default_rng(0)
        with pytest.raises(SimulationError):
            apply_phase_separator(Statevector.uniform(3), 0.1, _random_hamiltonian(4, rng))

    def test_x_mixer_matches_dense(self):
        rng = np.random.default_rng(1)
        state = _random_state(3, rng)
        expected = expm(-1j * 0.3 * _dense_x_mixer(3)) @ state.amplitudes
        apply_x_mixer(state, 0.3)
        assert np.allclose(state.amplitudes, expected, atol=1e-10)

    def test_x_mixer_quarter_turn_flips_all(self):
        state = Statevector.basis(3, 0)
        apply_x_mixer(state, np.pi / 2)
        assert state.probabilities()[7] == pytest.approx(1.0)

    def test_zero_beta_is_identity(self):
        rng = np.random.default_rng(2)
        state = _random_state(3, rng)
        before = state.amplitudes.copy()
        apply_x_mixer(state, 0.0)
        assert np.array_equal(state.amplitudes, before)


# =============================================================================
# XY RING MIXER
# =============================================================================

class TestXYMixer:

    def test_ring_pairs(self):
        assert ring_pairs(1) == []
        assert ring_pairs(2) == [(0, 1), (1, 0)]
        assert ring_pairs(4) == [(0, 1), (1, 2), (2, 3), (3, 0)]

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_ring_hamiltonian_matches_pauli_sum(self, n):
        assert np.allclose(xy_ring_hamiltonian(n), _dense_xy_block(n, 0, n), atol=1e-12)

    def test_block_unitary(self):
        u = xy_ring_unitary(3, 0.7)
        assert np.allclose(u, expm(-1j * 0.7 * _dense_xy_block(3, 0, 3)), atol=1e-10)
        assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-10)

    def test_single_slot_from_basis_state(self):
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=3, n_slots=1)
        state = Statevector.basis(3, index_from_string("100"))
        expected = expm(-1j * 0.7 * _dense_xy(config)) @ state.amplitudes
        apply_xy_ring_mixer(state, 0.7, config)
        assert np.allclose(state.amplitudes, expected, atol=1e-10)

    def test_two_qubit_ring_stays_in_span(self):
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=2, n_slots=1)
        state = Statevector.basis(2, index_from_string("10"))
        apply_xy_ring_mixer(state, 0.4, config)
        probs = state.probabilities()
        assert probs[index_from_string("10")] + probs[index_from_string("01")] == pytest.approx(1.0)
        assert probs[index_from_string("01")] > 0.0

    @pytest.mark.parametrize("n_locations,n_slots", [(3, 2), (2, 3), (4, 2)])
    def test_multi_slot_matches_dense(self, n_locations, n_slots):
        rng = np.random.default_rng(n_locations * 10 + n_slots)
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=n_locations, n_slots=n_slots)
        state = _random_state(config.n_qubits, rng)
        expected = expm(-1j * 0.9 * _dense_xy(config)) @ state.amplitudes
        apply_xy_ring_mixer(state, 0.9, config)
        assert np.allclose(state.amplitudes, expected, atol=1e-10)

    def test_slot_order_irrelevant(self):
        rng = np.random.default_rng(4)
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=3, n_slots=3)
        a = _random_state(9, rng)
        b = a.copy()
        apply_xy_ring_mixer(a, 0.5, config, slot_order=[1, 2, 3])
        apply_xy_ring_mixer(b, 0.5, config, slot_order=[3, 1, 2])
        assert np.allclose(a.amplitudes, b.amplitudes, atol=1e-12)

    def test_one_hot_subspace_preserved(self):
        rng = np.random.default_rng(5)
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=4, n_slots=3)
        mask = config.one_hot_mask()
        for _ in range(100):
            amps = np.where(mask, rng.normal(size=mask.size) + 1j * rng.normal(size=mask.size), 0.0)
            state = Statevector(config.n_qubits, amps / np.linalg.norm(amps))
            apply_xy_ring_mixer(state, rng.uniform(-np.pi, np.pi), config)
            assert one_hot_leakage(state, config) <= 1e-10


# =============================================================================
# ANSATZ
# =============================================================================

class TestAnsatz:

    def test_initial_states(self):
        qaoa = AnsatzConfig(AnsatzKind.X_MIXER_QAOA, p=1, n_locations=3, n_slots=1)
        xy = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=1, n_locations=3, n_slots=2)
        assert np.allclose(prepare_initial_state(qaoa).probabilities(), 1 / 8)
        start = prepare_initial_state(xy)
        assert start.probabilities()[index_from_string("100100")] == 1.0
        assert one_hot_leakage(start, xy) == 0.0

    @pytest.mark.parametrize("kind,n_locations,n_slots,p", [
        (kind, n, s, p)
        for kind in (AnsatzKind.X_MIXER_QAOA, AnsatzKind.XY_MIXER_ANSATZ)
        for n, s in ((2, 2), (3, 2), (2, 3), (4, 2), (3, 3))
        for p in (1, 2)
    ])
    def test_matches_dense_circuit(self, kind, n_locations, n_slots, p):
        rng = np.random.default_rng(n_locations + 7 * n_slots + 31 * p)
        config = AnsatzConfig(kind, p=p, n_locations=n_locations, n_slots=n_slots)
        h_c = _random_hamiltonian(config.n_qubits, rng)
        params = Params(gammas=tuple(rng.uniform(-1, 1, p)), betas=tuple(rng.uniform(-1, 1, p)))

        mixer = _dense_x_mixer(config.n_qubits) if kind is AnsatzKind.X_MIXER_QAOA else _dense_xy(config)
        cost = _dense_cost(h_c)
        psi = prepare_initial_state(config).amplitudes.copy()
        for gamma, beta in zip(params.gammas, params.betas):
            psi = expm(-1j * beta * mixer) @ (expm(-1j * gamma * cost) @ psi)

        state = run_ansatz(config, h_c, params)
        assert np.max(np.abs(state.amplitudes - psi)) <= 1e-9

    def test_layer_count_checked(self):
        config = AnsatzConfig(AnsatzKind.X_MIXER_QAOA, p=2, n_locations=2, n_slots=1)
        h_c = _random_hamiltonian(2, np.random.default_rng(0))
        with pytest.raises(ParameterError):
            run_ansatz(config, h_c, Params.default(1))

    def test_pricing_ansatz_samples_are_one_hot(self):
        inst, h_c = _pricing_hamiltonian(3, 3, 4)
        config = AnsatzConfig(AnsatzKind.XY_MIXER_ANSATZ, p=2, n_locations=inst.n_locations, n_slots=3)
        rng = np.random.default_rng(6)
        params = Params(gammas=tuple(rng.uniform(-1, 1, 2)), betas=tuple(rng.uniform(-np.pi, np.pi, 2)))
        state = run_ansatz(config, h_c, params)
        assert one_hot_leakage(state, config) <= 1e-10
        n = inst.n_locations
        for bits in sample(state, 1000, seed=1).counts:
            assert all(bits[t * n:(t + 1) * n].count("1") == 1 for t in range(3))


# =============================================================================
# MEASUREMENT
# =============================================================================

class TestMeasurement:

    def test_expectation_matches_dense(self):
        rng = np.random.default_rng(8)
        h_c = _random_hamiltonian(5, rng)
        state = _random_state(5, rng)
        dense = np.vdot(state.amplitudes, _dense_cost(h_c) @ state.amplitudes).real
        assert expectation(state, h_c) == pytest.approx(dense, abs=1e-10)

    def test_basis_state_sampling(self):
        state = Statevector.basis(4, 9)
        samples = sample(state, 1000, seed=0)
        assert samples.counts == {bitstring(9, 4): 1000}
        assert samples.shots == 1000

    def test_sampling_reproducible(self):
        state = _random_state(4, np.random.default_rng(9))
        a = sample(state, 500, seed=42)
        b = sample(state, 500, seed=42)
        assert a.counts == b.counts
        assert sum(a.counts.values()) == 500

    def test_most_common_ordering(self):
        samples = sample(_random_state(3, np.random.default_rng(10)), 200, seed=1)
        counts = [c for _, c in samples.most_common(8)]
        assert counts == sorted(counts, reverse=True)

    def test_shot_expectation_on_basis_state(self):
        h_c = _random_hamiltonian(3, np.random.default_rng(11))
        state = Statevector.basis(3, 5)
        assert shot_expectation(state, h_c, 50, seed=0) == pytest.approx(h_c.diagonal()[5])

    def test_shots_must_be_positive(self):
        with pytest.raises(ParameterError):
            sample(Statevector.uniform(2), 0, seed=0)

    def test_uniform_single_qubit_counts(self):
        samples = sample(Statevector.uniform(1), 10**6, seed=0)
        assert samples.counts.get("0", 0) + samples.counts.get("1", 0) == 10**6
        # 5 sigma, sigma = sqrt(10**6 / 4) = 500
        assert abs(samples.counts.get("0", 0) - 500_000) <= 2_500

    def test_zz_expectation_on_uniform_state(self):
        h_c = IsingHamiltonian(h=np.zeros(2), J={(0, 1): 1.0})
        assert expectation(Statevector.uniform(2), h_c) == pytest.approx(0.0, abs=1e-12)
        assert expectation(Statevector.basis(2, 0), h_c) == pytest.approx(1.0)
        assert expectation(Statevector.basis(2, 1), h_c) == pytest.approx(-1.0)
