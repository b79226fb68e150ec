"""
QCG-CVRP - Variational Ansatz

    |psi(gamma, beta)> = U_M(beta_p) U_P(gamma_p) ... U_M(beta_1) U_P(gamma_1) |psi_0>

X-mixer QAOA starts from the uniform superposition; the XY-mixer ansatz
starts from the feasible basis state with the vehicle parked at the depot in
every slot (x_{0,t} = 1), which the XY mixer never leaves the one-hot
subspace of.
"""

from qubo import IsingHamiltonian, qubit_index
from utils.errors import ParameterError

from .models import AnsatzConfig, AnsatzKind, Params, Statevector
from .operators import apply_phase_separator, apply_x_mixer, apply_xy_ring_mixer


def prepare_initial_state(config: AnsatzConfig) -> Statevector:
    if config.kind is AnsatzKind.X_MIXER_QAOA:
        return Statevector.uniform(config.n_qubits)
    index = sum(
        1 << qubit_index(0, t, config.n_locations) for t in range(1, config.n_slots + 1)
    )
    return Statevector.basis(config.n_qubits, index)


def apply_mixer(state: Statevector, beta: float, config: AnsatzConfig) -> Statevector:
    if config.kind is AnsatzKind.X_MIXER_QAOA:
        return apply_x_mixer(state, beta)
    return apply_xy_ring_mixer(state, beta, config)


def run_ansatz(config: AnsatzConfig, h_c: IsingHamiltonian, params: Params) -> Statevector:
    """Prepare |psi_0> and apply the p alternating layers."""
    if params.p != config.p:
        raise ParameterError(f"{params.p} parameter layers for a p={config.p} ansatz")
    state = prepare_initial_state(config)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_phase_separator(state, gamma, h_c)
        apply_mixer(state, beta, config)
    state.validate()
    return state
