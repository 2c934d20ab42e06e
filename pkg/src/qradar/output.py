"""Deterministic CSV/JSON artifact writers.

Floats are rendered with 17 significant digits in scientific notation so
repeated runs are byte-identical; JSON is sorted and indented.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

FORMAT_VERSION = 1

__all__ = ["FORMAT_VERSION", "format_float", "write_csv", "write_json", "config_hash"]


def format_float(value: float) -> str:
    if value != value:
        return "nan"
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return f"{value:.16e}"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if value is None:
        return "nan"
    return str(value)


def write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, float):
        # NaN/inf are not valid JSON; store as strings.
        if obj != obj or obj in (math.inf, -math.inf):
            return _cell(obj)
        return obj
    return obj


def write_json(path: Path, obj: dict) -> None:
    path.write_text(
        json.dumps(_json_safe(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def config_hash(normalized_config: dict) -> str:
    """Content hash of the normalized configuration (git-style sha)."""
    canonical = json.dumps(normalized_config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
