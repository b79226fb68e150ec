"""
QCG-CVRP - Structured Logging Configuration

Provides centralized logging setup for all modules. Human-readable progress goes
through these loggers; machine-readable run records (JSONL iteration logs, CSV
experiment rows) are written separately by ``cli.sinks``.

Usage:
    from utils.logging_config import get_logger
    logger = get_logger("cg")
    logger.info("Iteration %d: lp=%.6f", 3, 4.21)
    logger.warning("Pricing stalled", extra={"iteration": 3, "infeasible": 812})
"""

import logging
import sys

from utils.config import LOG_DATE_FORMAT, LOG_FORMAT, LOG_LEVEL

_configured = False


def setup_logging(level: str = None) -> None:
    """Configure the root logger once for the whole solver.

    Parameters
    ----------
    level : str, optional
        Overrides ``QCG_LOG_LEVEL`` (used by the CLI ``--log-level`` flag).
    """
    global _configured
    root = logging.getLogger()
    if level is not None:
        root.setLevel(getattr(logging, level.upper(), logging.INFO))
    if _configured:
        return

    handler = logging.StreamHandler(sys.stdout)
    handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATE_FORMAT))

    if level is None:
        root.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
    # Avoid adding duplicate handlers on repeated calls
    if not root.handlers:
        root.addHandler(handler)

    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Return a named logger, ensuring the root logger is configured.

    Parameters
    ----------
    name : str
        Dot-separated logger name, e.g. ``"cg"`` or ``"simulator.mixers"``.
    """
    setup_logging()
    return logging.getLogger(name)
