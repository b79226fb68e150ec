"""
QCG-CVRP - Error Hierarchy

All solver errors derive from ``QcgError``. The CLI maps each class to a
distinct exit code (see ``EXIT_CODES``).
"""

from typing import Optional


class QcgError(Exception):
    """Base class for solver errors."""


class ParameterError(QcgError, ValueError):
    """Invalid argument or configuration value."""


class SchemaError(QcgError, ValueError):
    """Malformed document; ``field_path`` names the offending field."""

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)


class InfeasibleError(QcgError):
    """No feasible solution: an uncovered customer or no exact cover."""

    def __init__(self, message: str, customer: Optional[int] = None):
        self.customer = customer
        super().__init__(message)


class GuardError(QcgError):
    """Problem too large for an exhaustive routine or the statevector cap."""


class SimulationError(QcgError):
    """Dimension mismatch or norm drift in the statevector simulator."""


EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4
EXIT_GUARD = 5

EXIT_CODES = {
    ParameterError: EXIT_USAGE,
    SchemaError: EXIT_IO,
    InfeasibleError: EXIT_INFEASIBLE,
    GuardError: EXIT_GUARD,
    SimulationError: EXIT_INTERNAL,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for an exception."""
    for cls, code in EXIT_CODES.items():
        if isinstance(exc, cls):
            return code
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_INTERNAL
