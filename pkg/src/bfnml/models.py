"""Domain models used across the bfnml pipeline.

All models are plain dataclasses; inputs validate themselves on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class BfnmlError(Exception):
    """Base class for every error raised by bfnml."""


class DomainError(BfnmlError, ValueError):
    """An argument lies outside a function's mathematical domain."""


class ValidationError(BfnmlError, ValueError):
    """A domain object or request parameter is invalid."""


class ConvergenceError(BfnmlError, RuntimeError):
    """An iterative expansion did not reach its tolerance."""


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------

class PriorFamily(str, Enum):
    UNIFORM = "uniform"
    JEFFREYS = "jeffreys"


class LuckinessKind(str, Enum):
    MATCHED_UNIFORM = "matched-uniform"  # a(θ) = −ln θ^½(1−θ)^½
    CONSTANT = "constant"                # standard NML


class RoundingMode(str, Enum):
    NEAREST = "nearest"  # half-up
    FLOOR = "floor"


class Pairing(str, Enum):
    """Which Bayes factor is compared against which NML variant."""

    UNIFORM_LNML = "uniform-lnml"
    JEFFREYS_NML = "jeffreys-nml"


class Method(str, Enum):
    ALL = "all"
    BAYES = "bayes"
    JEFFREYS = "jeffreys"
    LNML = "lnml"
    NML = "nml"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinomialData:
    """``y`` successes out of ``n`` trials."""

    n: int
    y: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ValidationError(f"n must be an integer, got {self.n!r}")
        if isinstance(self.y, bool) or int(self.y) != self.y:
            raise ValidationError(f"y must be an integer, got {self.y!r}")
        if self.n < 1:
            raise ValidationError(f"n must be at least 1, got {self.n}")
        if not 0 <= self.y <= self.n:
            raise ValidationError(f"y must lie in 0..{self.n}, got {self.y}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "y", int(self.y))

    @property
    def ml_estimate(self) -> float:
        return self.y / self.n


@dataclass(frozen=True)
class Boundary:
    """Cutpoint ``z`` of the constrained model M0: θ ≤ z."""

    z: float

    def __post_init__(self) -> None:
        z = float(self.z)
        if not 0.0 < z < 1.0:
            raise ValidationError(f"z must lie strictly between 0 and 1, got {self.z!r}")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class LuckinessSpec:
    """Luckiness function of an LNML code.

    ``constant`` is the value of a(θ) for the CONSTANT kind; it cancels between
    numerator and normalizer and is kept only so that the cancellation can be checked.
    """

    kind: LuckinessKind = LuckinessKind.MATCHED_UNIFORM
    constant: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LuckinessKind(self.kind))
        if self.kind is LuckinessKind.MATCHED_UNIFORM and self.constant != 0.0:
            raise ValidationError("a constant offset only applies to CONSTANT luckiness")


MATCHED_UNIFORM = LuckinessSpec(LuckinessKind.MATCHED_UNIFORM)
STANDARD_NML = LuckinessSpec(LuckinessKind.CONSTANT)


# ---------------------------------------------------------------------------
# Evidence results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BayesResult:
    prior: PriorFamily
    log_b01: float
    w0: float
    # ln of the full-model posterior mass above z; finite iff z·B01 < 1 (uniform prior)
    log_posterior_mass_above: float

    @property
    def b01(self) -> float:
        return math.exp(self.log_b01)


@dataclass(frozen=True)
class LnmlResult:
    log_numerator: float
    log_normalizer: float
    log_lnml: float
    estimator: float
    constrained: bool


@dataclass(frozen=True)
class LnmlWeights:
    w0: float
    w1: float


@dataclass(frozen=True)
class EvidenceSummary:
    """All four evidence variants for one (n, y, z)."""

    n: int
    y: int
    z: float
    log_b01_uniform: float
    w0_bayes: float
    log_b01_jeffreys: float
    w0_bayes_jeffreys: float
    log_lnml0: float
    log_lnml1: float
    w0_lnml: float
    log_nml0: float
    log_nml1: float
    w0_nml: float


# ---------------------------------------------------------------------------
# Analysis products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    y: int
    ml_estimate: float
    w0_bayes: float
    w0_lnml: float
    w0_nml: float
    w0_bayes_jeffreys: float


@dataclass(frozen=True)
class ConvergencePoint:
    n: int
    y_used: int
    theta_target: float
    w0_bayes: float
    w0_lnml: float


@dataclass
class DivergenceReport:
    n: int
    z: float
    pairing: Pairing
    critical_y: list[int] = field(default_factory=list)
    count: int = 0
    total: int = 0
    proportion: float = 0.0
    percent: float = 0.0
    max_w0_lnml_critical: float | None = None
    min_w0_bayes_critical: float | None = None
    # critical cases where Bayes prefers M0 while (L)NML prefers M1
    reversed_y: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class RegionRow:
    n: int
    min_critical_y: int | None
    max_critical_y: int | None
    count: int
    critical_y: tuple[int, ...] = ()


@dataclass
class IndependenceReport:
    n: int
    z: float
    holds: bool
    constant_w0: float | None
    region: list[int] = field(default_factory=list)
    region_size: int = 0
    max_relative_deviation: float = 0.0


@dataclass(frozen=True)
class MassDecomposition:
    prior_mass: float
    posterior_mass: float
    b01: float
