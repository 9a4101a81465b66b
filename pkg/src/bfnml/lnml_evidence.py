"""Luckiness NML and standard NML for the full and the order-constrained binomial model.

The sample space of n Bernoulli trials is {0, …, n}, so every normalizer is an
exact finite sum of weighted maximized likelihoods. The binomial coefficient is
part of every likelihood, numerator and normalizer alike.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import expit, xlog1py, xlogy

from bfnml.models import (
    MATCHED_UNIFORM,
    STANDARD_NML,
    BinomialData,
    Boundary,
    DomainError,
    LnmlResult,
    LnmlWeights,
    LuckinessKind,
    LuckinessSpec,
    ValidationError,
)
from bfnml.special_functions import Real, log_binomial_coefficient, log_sum_exp

logger = logging.getLogger(__name__)

NORMALIZER_CACHE_SIZE = 4096


def _check_open_unit(theta: ArrayLike) -> NDArray[np.float64]:
    values = np.asarray(theta, dtype=np.float64)
    if np.any(~((values > 0.0) & (values < 1.0))):
        raise DomainError(f"θ must lie strictly between 0 and 1, got {theta!r}")
    return values


# ---------------------------------------------------------------------------
# Luckiness and Fisher information
# ---------------------------------------------------------------------------

def luckiness(theta: ArrayLike) -> Real:
    """a(θ) = −ln θ^½(1−θ)^½, the luckiness that matches the uniform prior; minimum ln 2 at θ=½."""
    values = _check_open_unit(theta)
    result = -0.5 * np.log(values) - 0.5 * np.log1p(-values)
    return float(result) if np.ndim(result) == 0 else result


def fisher_information(theta: ArrayLike) -> Real:
    """𝓘(θ) = 1/(θ(1−θ)) for one Bernoulli trial."""
    values = _check_open_unit(theta)
    result = 1.0 / (values * (1.0 - values))
    return float(result) if np.ndim(result) == 0 else result


# ---------------------------------------------------------------------------
# Weighted likelihood and estimators
# ---------------------------------------------------------------------------

def _log_weighted_likelihood(
    n: int, x: ArrayLike, theta: ArrayLike, luck: LuckinessSpec
) -> NDArray[np.float64]:
    x = np.asarray(x, dtype=np.float64)
    theta = np.asarray(theta, dtype=np.float64)
    log_binom = log_binomial_coefficient(n, x)
    if luck.kind is LuckinessKind.MATCHED_UNIFORM:
        return log_binom + (x + 0.5) * np.log(theta) + (n - x + 0.5) * np.log1p(-theta)
    # 0·ln 0 = 0, so θ̂ ∈ {0, 1} at y ∈ {0, n} gives likelihood 1
    return log_binom + xlogy(x, theta) + xlog1py(n - x, -theta) - luck.constant


def weighted_log_likelihood(
    data: BinomialData, theta: float, luck: LuckinessSpec = MATCHED_UNIFORM
) -> float:
    """ln p(y|θ) − a(θ)."""
    if luck.kind is LuckinessKind.MATCHED_UNIFORM:
        _check_open_unit(theta)
    elif not 0.0 <= theta <= 1.0:
        raise DomainError(f"θ must lie in [0, 1], got {theta!r}")
    return float(_log_weighted_likelihood(data.n, data.y, theta, luck))


def luckiness_estimator_full(data: BinomialData) -> float:
    """argmax_θ θ^(y+½)(1−θ)^(n−y+½) = (y+½)/(n+1)."""
    return (data.y + 0.5) / (data.n + 1)


def luckiness_estimator_constrained(data: BinomialData, boundary: Boundary) -> float:
    """The full estimator, or z when it violates θ ≤ z (ties count as satisfied)."""
    return min(luckiness_estimator_full(data), boundary.z)


def ml_estimator(data: BinomialData, boundary: Boundary | None = None) -> float:
    estimate = data.y / data.n
    return estimate if boundary is None else min(estimate, boundary.z)


def _estimators(
    n: int, x: NDArray[np.float64], z: float | None, luck: LuckinessSpec
) -> NDArray[np.float64]:
    if luck.kind is LuckinessKind.MATCHED_UNIFORM:
        theta = (x + 0.5) / (n + 1)
    else:
        theta = x / n
    return theta if z is None else np.minimum(theta, z)


def _estimator_for(data: BinomialData, boundary: Boundary | None, luck: LuckinessSpec) -> float:
    if luck.kind is LuckinessKind.MATCHED_UNIFORM:
        if boundary is None:
            return luckiness_estimator_full(data)
        return luckiness_estimator_constrained(data, boundary)
    return ml_estimator(data, boundary)


# ---------------------------------------------------------------------------
# Normalizer
# ---------------------------------------------------------------------------

def _log_normalizer(n: int, z: float | None, luck: LuckinessSpec) -> float:
    x = np.arange(n + 1, dtype=np.float64)
    terms = _log_weighted_likelihood(n, x, _estimators(n, x, z, luck), luck)
    return log_sum_exp(terms)


@lru_cache(maxsize=NORMALIZER_CACHE_SIZE)
def _cached_log_normalizer(n: int, z: float | None, luck: LuckinessSpec) -> float:
    return _log_normalizer(n, z, luck)


def lnml_normalizer(
    n: int,
    boundary: Boundary | None = None,
    luck: LuckinessSpec = MATCHED_UNIFORM,
    *,
    use_cache: bool = True,
) -> float:
    """ln Σ_{x=0..n} p^L(x | θ̂_x) with the model's own (clipped) estimator θ̂_x."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    z = None if boundary is None else boundary.z
    if use_cache:
        return _cached_log_normalizer(int(n), z, luck)
    return _log_normalizer(int(n), z, luck)


def clear_normalizer_cache() -> None:
    _cached_log_normalizer.cache_clear()


# ---------------------------------------------------------------------------
# Evidence and weights
# ---------------------------------------------------------------------------

def lnml_evidence(
    data: BinomialData,
    boundary: Boundary | None = None,
    luck: LuckinessSpec = MATCHED_UNIFORM,
) -> LnmlResult:
    """LNML of the constrained model (``boundary`` given) or of the full model."""
    estimator = _estimator_for(data, boundary, luck)
    log_numerator = float(_log_weighted_likelihood(data.n, data.y, estimator, luck))
    log_normalizer = lnml_normalizer(data.n, boundary, luck)
    return LnmlResult(
        log_numerator=log_numerator,
        log_normalizer=log_normalizer,
        log_lnml=log_numerator - log_normalizer,
        estimator=estimator,
        constrained=boundary is not None,
    )


def nml_evidence(data: BinomialData, boundary: Boundary | None = None) -> LnmlResult:
    """Standard NML: constant luckiness with ML estimators."""
    return lnml_evidence(data, boundary, STANDARD_NML)


def lnml_weights(
    data: BinomialData, boundary: Boundary, luck: LuckinessSpec = MATCHED_UNIFORM
) -> LnmlWeights:
    """w_i = LNML_i / (LNML_0 + LNML_1).

    The log-odds are assembled as (num0 − num1) + (ln C1 − ln C0): when both
    models share the estimator the first bracket is exactly 0.0 and the weight
    depends on the normalizers alone.
    """
    constrained = lnml_evidence(data, boundary, luck)
    full = lnml_evidence(data, None, luck)
    log_odds = (constrained.log_numerator - full.log_numerator) + (
        full.log_normalizer - constrained.log_normalizer
    )
    return LnmlWeights(w0=float(expit(log_odds)), w1=float(expit(-log_odds)))


def nml_weights(data: BinomialData, boundary: Boundary) -> LnmlWeights:
    return lnml_weights(data, boundary, STANDARD_NML)


def sample_space_log_odds(
    n: int, boundary: Boundary, luck: LuckinessSpec = MATCHED_UNIFORM
) -> NDArray[np.float64]:
    """ln(LNML_0 / LNML_1) for every y = 0..n, assembled like ``lnml_weights``."""
    x = np.arange(n + 1, dtype=np.float64)
    theta_full = _estimators(n, x, None, luck)
    satisfied = theta_full <= boundary.z
    num_full = _log_weighted_likelihood(n, x, theta_full, luck)
    num_clipped = _log_weighted_likelihood(n, x, np.minimum(theta_full, boundary.z), luck)
    num_constrained = np.where(satisfied, num_full, num_clipped)
    log_normalizer_gap = lnml_normalizer(n, None, luck) - lnml_normalizer(n, boundary, luck)
    return (num_constrained - num_full) + log_normalizer_gap


def sample_space_weights(
    n: int, boundary: Boundary, luck: LuckinessSpec = MATCHED_UNIFORM
) -> NDArray[np.float64]:
    """w0 for every y = 0..n."""
    return expit(sample_space_log_odds(n, boundary, luck))


def satisfied_region(
    n: int, boundary: Boundary, luck: LuckinessSpec = MATCHED_UNIFORM
) -> NDArray[np.intp]:
    """The y values whose full-model estimator already satisfies θ ≤ z."""
    x = np.arange(n + 1, dtype=np.float64)
    return np.flatnonzero(_estimators(n, x, None, luck) <= boundary.z)
