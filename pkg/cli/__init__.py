"""QCG-CVRP - Command Line Package"""

from .experiments import PRESETS, ExperimentSpec, run_experiment, run_point, summarize
from .sinks import EXPERIMENT_COLUMNS, JsonlSink, read_jsonl, rows_to_frame, write_csv, write_json

__all__ = [
    "PRESETS", "ExperimentSpec", "run_experiment", "run_point", "summarize",
    "EXPERIMENT_COLUMNS", "JsonlSink", "read_jsonl", "rows_to_frame", "write_csv", "write_json",
]
