"""Configuration management for bfnml.

Settings only tune how work is executed. Nothing read here changes a computed
number or a rendered byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

from bfnml.models import Pairing, ValidationError

# ---------------------------------------------------------------------------
# Load .env from project root
# ---------------------------------------------------------------------------
_PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent

MIN_PRECISION = 6
MAX_PRECISION = 17


@dataclass(frozen=True)
class AnalysisConfig:
    """Execution knobs for the enumeration studies."""

    # Threads used for per-n work in region scans; output order never depends on it
    workers: int = 1
    # Which Bayes factor / NML pair divergence scans compare by default
    pairing: Pairing = Pairing.UNIFORM_LNML

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValidationError(f"workers must be at least 1, got {self.workers}")


@dataclass(frozen=True)
class OutputConfig:
    """Rendering defaults for the CLI."""

    precision: int = 12

    def __post_init__(self) -> None:
        if not MIN_PRECISION <= self.precision <= MAX_PRECISION:
            raise ValidationError(
                f"precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {self.precision}"
            )


@dataclass(frozen=True)
class Settings:
    """Top-level application settings."""

    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


def load_settings() -> Settings:
    """Build a ``Settings`` instance, reading ``BFNML_WORKERS`` from the environment or ``.env``."""
    load_dotenv(_PROJECT_ROOT / ".env")

    raw_workers = os.getenv("BFNML_WORKERS", "1")
    try:
        workers = int(raw_workers)
    except ValueError as exc:
        raise ValidationError(f"BFNML_WORKERS must be an integer, got {raw_workers!r}") from exc

    return Settings(analysis=AnalysisConfig(workers=workers))
