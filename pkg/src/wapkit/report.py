"""Report documents: JSON-compatible trees with exact numbers.

Rationals are written as ``"p/q"`` strings so nothing passes through a float.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

SCHEMA = "wapkit.report/1"


def plain(obj):
    """Convert a report tree to JSON-safe values (exact)."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [plain(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__} exactly")


def to_json(doc: dict) -> str:
    return json.dumps(plain(doc), indent=2) + "\n"


def _text_lines(obj, path: str, out: list[str]) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _text_lines(v, f"{path}.{k}" if path else str(k), out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            _text_lines(v, f"{path}[{i}]", out)
    elif isinstance(obj, list):
        out.append(f"{path}: {' '.join(str(x) for x in obj)}")
    else:
        out.append(f"{path}: {'' if obj is None else obj}")


def to_text(doc: dict) -> str:
    lines: list[str] = []
    _text_lines(plain(doc), "", lines)
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    return to_json(doc) if fmt == "json" else to_text(doc)


def write_atomic(path: str | Path, data: str | bytes) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
