"""QCG-CVRP - Column Generation Controller Package"""

from .column_generation import (
    Subsolver, CgConfig, CgIterationLog, CgResult, DecodeResult, PricingResult,
    decode_samples, price_once, run_cg,
)

__all__ = [
    "Subsolver", "CgConfig", "CgIterationLog", "CgResult", "DecodeResult", "PricingResult",
    "decode_samples", "price_once", "run_cg",
]
