"""
QCG-CVRP - Run Record Sinks

Machine-readable outputs, kept apart from the human log:
- JSONL iteration logs (one record per CG iteration)
- JSON run summaries
- CSV experiment datasets (pandas), versioned by a ``schema_version`` column
"""

import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Union

import numpy as np
import pandas as pd

from utils.config import SCHEMA_VERSION
from utils.logging_config import get_logger

logger = get_logger("cli")

PathLike = Union[str, Path]

EXPERIMENT_COLUMNS = [
    "schema_version", "experiment", "sweep_value", "seed", "instance_seed", "solver_seed",
    "subsolver", "n_customers", "T", "p", "K", "iteration", "min_reduced_cost",
    "lp_objective", "routes_added", "final_distance", "oracle_distance", "converged", "status",
]


def _clean(value):
    """JSON has no infinities or NaN; write them as null."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class JsonlSink:
    """Append-only line-delimited JSON writer."""

    def __init__(self, path: PathLike):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("w", encoding="utf-8")
        self.count = 0

    def write(self, record: Dict) -> None:
        self._fh.write(json.dumps({k: _clean(v) for k, v in record.items()}) + "\n")
        self._fh.flush()
        self.count += 1

    def close(self) -> None:
        if not self._fh.closed:
            self._fh.close()
            logger.info("Wrote %d records to %s", self.count, self.path)

    def __enter__(self) -> "JsonlSink":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_jsonl(path: PathLike) -> List[Dict]:
    with Path(path).open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_json(document: Dict, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({k: _clean(v) for k, v in document.items()}, indent=2) + "\n")
    logger.info("Wrote %s", path)
    return path


def rows_to_frame(rows: Iterable[Dict]) -> pd.DataFrame:
    """Experiment rows in the fixed column order."""
    frame = pd.DataFrame(list(rows), columns=EXPERIMENT_COLUMNS)
    frame["schema_version"] = SCHEMA_VERSION
    return frame


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path
