"""
QCG-CVRP - Configuration

Environment-driven settings (optionally loaded from a ``.env`` file in the
working directory) and the experimental defaults used throughout the solver.

Environment overrides:
    QCG_LOG_LEVEL    logging level (default INFO)
    QCG_LOG_FORMAT   logging format string
    QCG_WORKERS      experiment worker-pool size (default: CPU count)
    QCG_MAX_QUBITS   statevector hard cap (default 24)
    QCG_LP_TOL       simplex pivot / feasibility tolerance (default 1e-9)
    QCG_OUTPUT_DIR   default directory for CLI artifacts (default ./runs)
"""

import os

from dotenv import load_dotenv


def load_environment(path: str = None) -> bool:
    """Load ``.env`` overrides into ``os.environ`` without clobbering set values."""
    return load_dotenv(dotenv_path=path, override=False)


load_environment()

# =============================================================================
# ENVIRONMENT SETTINGS
# =============================================================================

LOG_LEVEL = os.environ.get("QCG_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.environ.get(
    "QCG_LOG_FORMAT",
    "%(asctime)s [%(name)s] %(levelname)s: %(message)s",
)
LOG_DATE_FORMAT = "%Y-%m-%dT%H:%M:%S%z"

WORKERS = int(os.environ.get("QCG_WORKERS", str(os.cpu_count() or 1)))
MAX_QUBITS = int(os.environ.get("QCG_MAX_QUBITS", "24"))
LP_TOL = float(os.environ.get("QCG_LP_TOL", "1e-9"))
OUTPUT_DIR = os.environ.get("QCG_OUTPUT_DIR", "./runs")

# =============================================================================
# INSTANCE DEFAULTS
# =============================================================================

DEPOT_COORD = (0.5, 0.5)       # Depot at the centre of the unit square
DEFAULT_CAPACITY = 25          # W
DEFAULT_DEMAND_LO = 1          # w_i drawn from [1, 15]
DEFAULT_DEMAND_HI = 15
SCHEMA_VERSION = 1             # Instance file format

# =============================================================================
# SOLVER DEFAULTS
# =============================================================================

DEFAULT_LAMBDA1 = 1.0          # capacity multiplier
DEFAULT_LAMBDA2 = 1.0          # at-most-one-visit-per-slot multiplier
DEFAULT_LAMBDA3 = 1.0          # one-hot penalty for the X-mixer baseline
DEFAULT_LAYERS = 2             # p
DEFAULT_SHOTS = 1000
DEFAULT_TIME_STEPS = 4         # T
DEFAULT_ROUTES_PER_ITERATION = 10   # K
DEFAULT_CONVERGENCE_EPS = 1e-6
DEFAULT_MAX_ITERATIONS = 30
DEFAULT_SAMPLES_PER_POINT = 10

# Variational parameter search
DEFAULT_MAX_EVALS = 250
DEFAULT_INITIAL_PARAM = 0.01
DEFAULT_INITIAL_STEP = 0.1
DEFAULT_CONVERGENCE_TOL = 1e-6
DEFAULT_PARAM_TOL = 1e-4

# Oracle guards
ORACLE_ENUMERATION_MAX_LOCATIONS = 10
ORACLE_CVRP_MAX_LOCATIONS = 8

# Integer RMP: exhaustive search below this many routes, LP-bounded B&B above
EXHAUSTIVE_PARTITION_MAX_ROUTES = 25
