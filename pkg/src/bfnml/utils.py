"""Small helper utilities."""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any


def ensure_dir(path: Path) -> Path:
    """Create the directory (and parents) if it doesn't exist."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def dumps_json(data: Any) -> str:
    """Serialise *data* as indented JSON with sorted keys and a trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def write_output(text: str, path: Path | None = None) -> None:
    """Write *text* to *path* as UTF-8 with ``\\n`` line endings, or to standard output."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    ensure_dir(path.parent)
    path.write_bytes(text.encode("utf-8"))


def fixed(value: float, precision: int) -> str:
    """Fixed-point text with *precision* decimals; locale independent."""
    if not math.isfinite(value):
        return ""
    text = f"{value:.{precision}f}"
    # "-0.000…" and "0.000…" must render the same
    if text.startswith("-") and not text.strip("-0."):
        return text[1:]
    return text
