"""Encompassing-prior Bayes factors for M0: θ ≤ z against the full binomial model M1.

With proportional priors on [0, z], B01 is the ratio of the full model's
posterior mass to its prior mass on the constrained region. Under the uniform
prior the posterior is Beta(y+1, n−y+1) and the prior mass is z; under the
Jeffreys prior both are Beta(½, ½)-based.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import expit

from bfnml.models import BayesResult, BinomialData, Boundary, DomainError, PriorFamily
from bfnml.special_functions import Real, log_incomplete_beta_tails

logger = logging.getLogger(__name__)

_PRIOR_SHAPE = {PriorFamily.UNIFORM: 1.0, PriorFamily.JEFFREYS: 0.5}


def log_bayes_factor(
    n: ArrayLike,
    y: ArrayLike,
    z: ArrayLike,
    prior: PriorFamily = PriorFamily.UNIFORM,
) -> tuple[Real, Real]:
    """Vectorised (ln B01, ln posterior mass above z) over any broadcastable n, y, z.

    No validation: callers pass checked ``BinomialData``/``Boundary`` values or
    whole sample spaces built from them.
    """
    prior = PriorFamily(prior)
    shape = _PRIOR_SHAPE[prior]
    y_arr = np.asarray(y, dtype=np.float64)
    n_arr = np.asarray(n, dtype=np.float64)
    log_post_below, log_post_above = log_incomplete_beta_tails(
        z, y_arr + shape, n_arr - y_arr + shape
    )
    if prior is PriorFamily.UNIFORM:
        log_prior_below = np.log(z)
    else:
        log_prior_below, _ = log_incomplete_beta_tails(z, shape, shape)
    log_b01 = np.asarray(log_post_below) - log_prior_below
    if np.ndim(log_b01) == 0:
        return float(log_b01), float(log_post_above)
    return log_b01, log_post_above


def posterior_weight(log_b01: ArrayLike) -> Real:
    """B01 / (1 + B01) under equal prior model odds, evaluated as a logistic in ln B01."""
    values = np.asarray(log_b01, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"log Bayes factor must be finite, got {log_b01!r}")
    weight = expit(values)
    return float(weight) if np.ndim(weight) == 0 else weight


def _bayes_factor(data: BinomialData, boundary: Boundary, prior: PriorFamily) -> BayesResult:
    log_b01, log_above = log_bayes_factor(data.n, data.y, boundary.z, prior)
    result = BayesResult(
        prior=prior,
        log_b01=log_b01,
        w0=posterior_weight(log_b01),
        log_posterior_mass_above=log_above,
    )
    logger.debug(
        "B01[%s] n=%d y=%d z=%g -> log_b01=%.6g w0=%.6g",
        prior.value, data.n, data.y, boundary.z, result.log_b01, result.w0,
    )
    return result


def bayes_factor_uniform(data: BinomialData, boundary: Boundary) -> BayesResult:
    """B01 = I_z(y+1, n−y+1) / z."""
    return _bayes_factor(data, boundary, PriorFamily.UNIFORM)


def bayes_factor_jeffreys(data: BinomialData, boundary: Boundary) -> BayesResult:
    """B01 = I_z(y+½, n−y+½) / I_z(½, ½); M0's prior is the full Jeffreys prior truncated to [0, z]."""
    return _bayes_factor(data, boundary, PriorFamily.JEFFREYS)


def bayes_factor(data: BinomialData, boundary: Boundary, prior: PriorFamily) -> BayesResult:
    return _bayes_factor(data, boundary, PriorFamily(prior))


def max_constrained_weight(boundary: Boundary) -> float:
    """Supremum 1/(1+z) of the uniform-prior weight of M0, since B01 < 1/z."""
    return 1.0 / (1.0 + boundary.z)


def sample_space_bayes_weights(
    n: int, boundary: Boundary, prior: PriorFamily = PriorFamily.UNIFORM
) -> NDArray[np.float64]:
    """w0 for every possible data set y = 0..n."""
    log_b01, _ = log_bayes_factor(n, np.arange(n + 1), boundary.z, prior)
    return expit(np.asarray(log_b01))
