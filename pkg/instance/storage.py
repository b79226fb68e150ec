"""
QCG-CVRP - Instance File Storage

Instance files are JSON documents with exactly these keys::

    {
      "schema_version": 1,
      "n_locations": 5,
      "capacity": 25,
      "coords": [[0.5, 0.5], [0.12, 0.93], ...],
      "demands": [0, 7, 3, 15, 1]
    }

Unknown keys are rejected. Coordinates lie in [0, 1]. The distance matrix is
recomputed on load.
"""

import json
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictFloat, StrictInt, ValidationError

from utils.config import SCHEMA_VERSION
from utils.errors import SchemaError
from utils.logging_config import get_logger

from .models import Instance

logger = get_logger("instance.storage")

PathLike = Union[str, Path]


class InstanceDocument(BaseModel):
    """Structural schema of an instance file."""

    model_config = ConfigDict(extra="forbid")

    schema_version: StrictInt
    n_locations: StrictInt = Field(..., ge=1)
    capacity: StrictInt = Field(..., ge=1)
    coords: List[Tuple[StrictFloat, StrictFloat]]
    demands: List[StrictInt]


def _format_loc(loc) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def instance_to_document(instance: Instance) -> dict:
    """Serialisable document for an instance (distance matrix omitted)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "n_locations": instance.n_locations,
        "capacity": instance.capacity,
        "coords": [[x, y] for x, y in instance.coords],
        "demands": list(instance.demands),
    }


def instance_from_document(document: dict) -> Instance:
    """
    Validate a document and build the instance.

    Raises
    ------
    SchemaError
        With the field path of the first violation, e.g. ``capacity`` or
        ``demands[3]``.
    """
    if not isinstance(document, dict):
        raise SchemaError("instance document must be a JSON object")
    try:
        doc = InstanceDocument.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        field_path = _format_loc(first["loc"])
        raise SchemaError(first["msg"], field_path=field_path) from e

    if doc.schema_version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema version {doc.schema_version}, expected {SCHEMA_VERSION}",
            field_path="schema_version",
        )
    if len(doc.coords) != doc.n_locations:
        raise SchemaError(
            f"{len(doc.coords)} coordinates for n_locations={doc.n_locations}",
            field_path="coords",
        )
    if len(doc.demands) != doc.n_locations:
        raise SchemaError(
            f"{len(doc.demands)} demands for n_locations={doc.n_locations}",
            field_path="demands",
        )
    for i, (x, y) in enumerate(doc.coords):
        for axis, value in enumerate((x, y)):
            if not 0.0 <= value <= 1.0:
                raise SchemaError(
                    f"coordinate {value} outside [0, 1]",
                    field_path=f"coords[{i}][{axis}]",
                )
    if doc.demands[0] != 0:
        raise SchemaError("depot demand must be 0", field_path="demands[0]")
    for i, w in enumerate(doc.demands[1:], start=1):
        if w < 1:
            raise SchemaError(f"demand {w} must be >= 1", field_path=f"demands[{i}]")
        if w > doc.capacity:
            raise SchemaError(
                f"demand {w} exceeds capacity {doc.capacity}",
                field_path=f"demands[{i}]",
            )

    return Instance(
        coords=tuple(doc.coords), demands=tuple(doc.demands), capacity=doc.capacity
    )


def save_instance(instance: Instance, path: PathLike) -> Path:
    """Write an instance file; parent directories are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(instance_to_document(instance), indent=2) + "\n")
    logger.info("Saved instance with %d locations to %s", instance.n_locations, path)
    return path


def load_instance(path: PathLike) -> Instance:
    """
    Read and validate an instance file.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    SchemaError
        If the file is not valid JSON or violates the schema.
    """
    path = Path(path)
    text = path.read_text()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON in {path}: {e}") from e
    return instance_from_document(document)
