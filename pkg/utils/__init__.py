"""QCG-CVRP - Utilities Package"""

from .config import load_environment
from .errors import (
    QcgError, ParameterError, SchemaError, InfeasibleError, GuardError, SimulationError,
)
from .logging_config import get_logger, setup_logging

__all__ = [
    "load_environment",
    "QcgError", "ParameterError", "SchemaError", "InfeasibleError",
    "GuardError", "SimulationError",
    "get_logger", "setup_logging",
]
