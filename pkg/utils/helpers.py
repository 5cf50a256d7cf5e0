"""Serialisation helpers: canonical JSON, run manifests and CSV rows."""

from typing import Any, Dict, Iterable, List, Mapping, Optional, TextIO
from dataclasses import dataclass, field, asdict, is_dataclass
import csv
import io
import json
import logging
import math
import sys

import numpy as np

logger = logging.getLogger(__name__)

FLOAT_FORMAT = ".17g"


def format_float(value: float) -> str:
    """Format a float with 17 significant digits; non-finite values become null."""
    if not math.isfinite(value):
        return "null"
    return format(value, FLOAT_FORMAT)


def to_plain(value: Any) -> Any:
    """Convert dataclasses, numpy scalars and tuples into JSON-ready values."""
    if is_dataclass(value) and not isinstance(value, type):
        return to_plain(asdict(value))
    if isinstance(value, Mapping):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _encode(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        items = (
            f"{json.dumps(str(k), ensure_ascii=False)}:{_encode(value[k])}"
            for k in sorted(value, key=str)
        )
        return "{" + ",".join(items) + "}"
    if isinstance(value, list):
        return "[" + ",".join(_encode(v) for v in value) + "]"
    raise TypeError(f"Cannot encode value of type {type(value).__name__}")


def canonical_json(data: Any) -> str:
    """Serialise to canonical JSON.

    Keys are sorted, separators are compact and floats carry 17 significant
    digits, so parsing and re-serialising reproduces the text byte for byte.
    """
    return _encode(to_plain(data))


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record echoed into every command output."""
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    artifact_version: str = ""
    wall_time_ms: int = 0


def build_manifest(
    command: str,
    parameters: Dict[str, Any],
    wall_time_s: float,
    artifact_version: Optional[str] = None,
) -> RunManifest:
    """Create a run manifest with the package version filled in."""
    if artifact_version is None:
        from nestexp import __version__
        artifact_version = __version__
    return RunManifest(
        command=command,
        parameters=to_plain(parameters),
        artifact_version=artifact_version,
        wall_time_ms=int(round(wall_time_s * 1000)),
    )


def csv_text(header: List[str], rows: Iterable[Iterable[Any]]) -> str:
    """Render rows as CSV; integers stay exact decimal strings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            format_float(v) if isinstance(v, float) else str(v) for v in row
        ])
    return buffer.getvalue()


def write_json(payload: Any, stream: Optional[TextIO] = None) -> None:
    """Write one canonical JSON document followed by a newline."""
    stream = stream or sys.stdout
    stream.write(canonical_json(payload) + "\n")
    stream.flush()
