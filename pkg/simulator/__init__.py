"""QCG-CVRP - Statevector Simulator Package"""

from .models import (
    Statevector, SampleSet, AnsatzKind, AnsatzConfig, Params,
    bitstring, bits_from_string, index_from_string, one_hot_leakage, NORM_TOL,
)
from .operators import (
    apply_phase_separator, apply_x_mixer, apply_xy_ring_mixer,
    ring_pairs, xy_ring_hamiltonian, xy_ring_unitary,
)
from .measurement import expectation, sample, shot_expectation
from .ansatz import prepare_initial_state, apply_mixer, run_ansatz

__all__ = [
    "Statevector", "SampleSet", "AnsatzKind", "AnsatzConfig", "Params",
    "bitstring", "bits_from_string", "index_from_string", "one_hot_leakage", "NORM_TOL",
    "apply_phase_separator", "apply_x_mixer", "apply_xy_ring_mixer",
    "ring_pairs", "xy_ring_hamiltonian", "xy_ring_unitary",
    "expectation", "sample", "shot_expectation",
    "prepare_initial_state", "apply_mixer", "run_ansatz",
]
