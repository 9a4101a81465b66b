"""Enumeration studies over the sample space and over n.

Takes a boundary (and n or a grid of n) and produces per-y weight sweeps,
convergence curves, divergence scans and regions, data-independence checks and
the posterior/prior mass decomposition behind the uniform Bayes factor.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from decimal import ROUND_FLOOR, ROUND_HALF_UP, Decimal

import numpy as np
from numpy.typing import NDArray

from bfnml.bayes_evidence import (
    bayes_factor_jeffreys,
    bayes_factor_uniform,
    sample_space_bayes_weights,
)
from bfnml.config import AnalysisConfig
from bfnml.lnml_evidence import (
    lnml_evidence,
    lnml_weights,
    nml_evidence,
    nml_weights,
    sample_space_weights,
    satisfied_region,
)
from bfnml.models import (
    MATCHED_UNIFORM,
    STANDARD_NML,
    BinomialData,
    Boundary,
    ConvergencePoint,
    DivergenceReport,
    EvidenceSummary,
    IndependenceReport,
    LuckinessSpec,
    MassDecomposition,
    Pairing,
    PriorFamily,
    RegionRow,
    RoundingMode,
    SweepRow,
    ValidationError,
)
from bfnml.special_functions import regularized_incomplete_beta

logger = logging.getLogger(__name__)

# A weight of exactly ½ is "no preference"
PREFERENCE_THRESHOLD = 0.5
INDEPENDENCE_TOLERANCE = 1e-14

_ROUNDING = {RoundingMode.NEAREST: ROUND_HALF_UP, RoundingMode.FLOOR: ROUND_FLOOR}

_PAIRINGS: dict[Pairing, tuple[PriorFamily, LuckinessSpec]] = {
    Pairing.UNIFORM_LNML: (PriorFamily.UNIFORM, MATCHED_UNIFORM),
    Pairing.JEFFREYS_NML: (PriorFamily.JEFFREYS, STANDARD_NML),
}


def build_n_grid(n_min: int, n_max: int, steps: int, spacing: str = "geometric") -> list[int]:
    """Integer sample sizes from n_min to n_max, strictly increasing."""
    if n_min < 1 or n_max < n_min:
        raise ValidationError(f"need 1 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}")
    if steps < 1:
        raise ValidationError(f"steps must be at least 1, got {steps}")
    if spacing == "geometric":
        raw = np.geomspace(n_min, n_max, steps)
    elif spacing == "linear":
        raw = np.linspace(n_min, n_max, steps)
    else:
        raise ValidationError(f"unknown spacing {spacing!r}")
    grid = [int(n) for n in np.unique(np.rint(raw).astype(np.int64))]
    if len(grid) < steps:
        logger.warning("n-grid collapsed to %d distinct sizes after rounding (asked for %d)", len(grid), steps)
    return grid


def round_target(theta_fraction: float, z: float, n: int, rounding: RoundingMode) -> int:
    """theta_fraction·z·n rounded on the decimal text of the inputs, so 0.6·0.5·1000 is 300."""
    exact = Decimal(repr(float(theta_fraction))) * Decimal(repr(float(z))) * n
    return int(exact.to_integral_value(rounding=_ROUNDING[RoundingMode(rounding)]))


class Analyzer:
    """Runs the Bayes-versus-NML comparisons over whole sample spaces."""

    def __init__(self, config: AnalysisConfig | None = None) -> None:
        self._cfg = config or AnalysisConfig()

    # ------------------------------------------------------------------
    # Single data set
    # ------------------------------------------------------------------

    def evidence(self, data: BinomialData, boundary: Boundary) -> EvidenceSummary:
        """Every evidence variant for one (n, y, z)."""
        uniform = bayes_factor_uniform(data, boundary)
        jeffreys = bayes_factor_jeffreys(data, boundary)
        return EvidenceSummary(
            n=data.n,
            y=data.y,
            z=boundary.z,
            log_b01_uniform=uniform.log_b01,
            w0_bayes=uniform.w0,
            log_b01_jeffreys=jeffreys.log_b01,
            w0_bayes_jeffreys=jeffreys.w0,
            log_lnml0=lnml_evidence(data, boundary).log_lnml,
            log_lnml1=lnml_evidence(data).log_lnml,
            w0_lnml=lnml_weights(data, boundary).w0,
            log_nml0=nml_evidence(data, boundary).log_lnml,
            log_nml1=nml_evidence(data).log_lnml,
            w0_nml=nml_weights(data, boundary).w0,
        )

    @staticmethod
    def mass_decomposition(data: BinomialData, boundary: Boundary) -> MassDecomposition:
        """Uniform-prior B01 as posterior mass over prior mass on [0, z]."""
        prior_mass = boundary.z
        posterior_mass = regularized_incomplete_beta(boundary.z, data.y + 1, data.n - data.y + 1)
        return MassDecomposition(
            prior_mass=prior_mass,
            posterior_mass=posterior_mass,
            b01=posterior_mass / prior_mass,
        )

    # ------------------------------------------------------------------
    # Sweeps
    # ------------------------------------------------------------------

    def sweep_weights(self, n: int, boundary: Boundary) -> list[SweepRow]:
        """One row per y = 0..n with all four weight variants."""
        _check_n(n)
        w_bayes = sample_space_bayes_weights(n, boundary, PriorFamily.UNIFORM)
        w_jeffreys = sample_space_bayes_weights(n, boundary, PriorFamily.JEFFREYS)
        w_lnml = sample_space_weights(n, boundary, MATCHED_UNIFORM)
        w_nml = sample_space_weights(n, boundary, STANDARD_NML)
        return [
            SweepRow(
                y=y,
                ml_estimate=y / n,
                w0_bayes=float(w_bayes[y]),
                w0_lnml=float(w_lnml[y]),
                w0_nml=float(w_nml[y]),
                w0_bayes_jeffreys=float(w_jeffreys[y]),
            )
            for y in range(n + 1)
        ]

    # ------------------------------------------------------------------
    # Convergence
    # ------------------------------------------------------------------

    def convergence_curve(
        self,
        boundary: Boundary,
        theta_fraction: float,
        n_grid: Sequence[int],
        rounding: RoundingMode = RoundingMode.NEAREST,
    ) -> list[ConvergencePoint]:
        """Weights for data whose estimate sits at theta_fraction·z, for each n in the grid."""
        theta_target = theta_fraction * boundary.z
        if theta_fraction <= 0 or not 0.0 < theta_target < 1.0:
            raise ValidationError(
                f"fraction·z must lie strictly between 0 and 1, got {theta_fraction}·{boundary.z}"
            )
        if not n_grid:
            raise ValidationError("n-grid is empty")
        if any(later <= earlier for earlier, later in zip(n_grid, n_grid[1:])):
            raise ValidationError(f"n-grid must be strictly increasing, got {list(n_grid)}")

        points: list[ConvergencePoint] = []
        for n in n_grid:
            _check_n(n)
            y_used = round_target(theta_fraction, boundary.z, n, rounding)
            if not 0 <= y_used <= n:
                raise ValidationError(f"rounded y={y_used} falls outside 0..{n}")
            data = BinomialData(n, y_used)
            points.append(
                ConvergencePoint(
                    n=n,
                    y_used=y_used,
                    theta_target=theta_target,
                    w0_bayes=bayes_factor_uniform(data, boundary).w0,
                    w0_lnml=lnml_weights(data, boundary).w0,
                )
            )
        logger.info(
            "Convergence curve — z=%g target=%g, %d sample sizes", boundary.z, theta_target, len(points)
        )
        return points

    # ------------------------------------------------------------------
    # Divergence
    # ------------------------------------------------------------------

    def _paired_weights(
        self, n: int, boundary: Boundary, pairing: Pairing
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        prior, luck = _PAIRINGS[Pairing(pairing)]
        return (
            sample_space_bayes_weights(n, boundary, prior),
            sample_space_weights(n, boundary, luck),
        )

    def divergence_scan(
        self, n: int, boundary: Boundary, pairing: Pairing | None = None
    ) -> DivergenceReport:
        """Data sets y = 0..n on which the Bayes factor and (L)NML prefer different models."""
        _check_n(n)
        pairing = Pairing(pairing or self._cfg.pairing)
        w_bayes, w_nml = self._paired_weights(n, boundary, pairing)

        prefers_bayes = np.sign(w_bayes - PREFERENCE_THRESHOLD)
        prefers_nml = np.sign(w_nml - PREFERENCE_THRESHOLD)
        critical = (prefers_bayes != prefers_nml) & (prefers_bayes != 0) & (prefers_nml != 0)
        reverse = critical & (prefers_nml < 0)

        count = int(critical.sum())
        total = n + 1
        report = DivergenceReport(
            n=n,
            z=boundary.z,
            pairing=pairing,
            critical_y=[int(y) for y in np.flatnonzero(critical)],
            count=count,
            total=total,
            proportion=count / total,
            percent=round(100.0 * count / total, 1),
            max_w0_lnml_critical=float(w_nml[critical].max()) if count else None,
            min_w0_bayes_critical=float(w_bayes[critical].min()) if count else None,
            reversed_y=[int(y) for y in np.flatnonzero(reverse)],
        )
        logger.debug("Divergence n=%d z=%g — %d/%d critical", n, boundary.z, count, total)
        return report

    def divergence_region(
        self,
        boundary: Boundary,
        n_min: int,
        n_max: int,
        pairing: Pairing | None = None,
    ) -> list[RegionRow]:
        """Per-n envelope of the critical set; rows come back ordered by n."""
        if n_min < 1 or n_max < n_min:
            raise ValidationError(f"need 1 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}")

        def scan(n: int) -> RegionRow:
            report = self.divergence_scan(n, boundary, pairing)
            ys = report.critical_y
            return RegionRow(
                n=n,
                min_critical_y=ys[0] if ys else None,
                max_critical_y=ys[-1] if ys else None,
                count=report.count,
                critical_y=tuple(ys),
            )

        sizes = range(n_min, n_max + 1)
        if self._cfg.workers == 1:
            rows = [scan(n) for n in sizes]
        else:
            with ThreadPoolExecutor(max_workers=self._cfg.workers) as pool:
                rows = list(pool.map(scan, sizes))
        logger.info(
            "Divergence region — z=%g n=%d..%d, %d sizes with critical data",
            boundary.z, n_min, n_max, sum(1 for row in rows if row.count),
        )
        return rows

    # ------------------------------------------------------------------
    # Data independence
    # ------------------------------------------------------------------

    def data_independence_check(
        self, n: int, boundary: Boundary, luck: LuckinessSpec = MATCHED_UNIFORM
    ) -> IndependenceReport:
        """Whether the (L)NML weight is constant wherever the full estimator satisfies θ ≤ z."""
        _check_n(n)
        region = satisfied_region(n, boundary, luck)
        if region.size == 0:
            return IndependenceReport(n=n, z=boundary.z, holds=True, constant_w0=None)

        weights = sample_space_weights(n, boundary, luck)[region]
        reference = float(weights[0])
        deviation = float(np.max(np.abs(weights - reference)) / reference)
        return IndependenceReport(
            n=n,
            z=boundary.z,
            holds=deviation <= INDEPENDENCE_TOLERANCE,
            constant_w0=reference,
            region=[int(y) for y in region],
            region_size=int(region.size),
            max_relative_deviation=deviation,
        )


def _check_n(n: int) -> None:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
