"""QCG-CVRP - Variational Optimizer Package"""

from .variational import METHODS, OptimizerConfig, OptResult, minimize

__all__ = ["METHODS", "OptimizerConfig", "OptResult", "minimize"]
