"""Log-space special functions.

log-beta, log binomial coefficients, the regularized incomplete beta function
and log-sum-exp. Every function accepts scalars or numpy arrays (broadcast
together) and returns a plain ``float`` when all arguments are scalar.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import betaln, gammaln

from bfnml.models import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

CF_TOLERANCE = 1e-15
CF_MAX_ITERATIONS = 500

_FPMIN = 1e-300
_LOG_HALF = float(np.log(0.5))

Real = float | NDArray[np.float64]


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _is_scalar(*args: Any) -> bool:
    return all(np.ndim(arg) == 0 for arg in args)


def _out(value: NDArray[np.float64], scalar: bool) -> Real:
    return float(value) if scalar else value


def _check_shapes(a: ArrayLike, b: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    a_arr = np.asarray(a, dtype=np.float64)
    b_arr = np.asarray(b, dtype=np.float64)
    # written as ``not (> 0)`` so that NaN is rejected too
    if np.any(~(a_arr > 0)) or np.any(~(b_arr > 0)):
        raise DomainError(f"beta shape parameters must be positive, got a={a!r}, b={b!r}")
    return a_arr, b_arr


def _log1mexp(v: NDArray[np.float64]) -> NDArray[np.float64]:
    """ln(1 − eᵛ) for v ≤ 0."""
    with np.errstate(divide="ignore"):
        return np.where(v > _LOG_HALF, np.log(-np.expm1(v)), np.log1p(-np.exp(v)))


def _clamp_tiny(v: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.where(np.abs(v) < _FPMIN, _FPMIN, v)


# ---------------------------------------------------------------------------
# Beta function and binomial coefficients
# ---------------------------------------------------------------------------

def log_beta(a: ArrayLike, b: ArrayLike) -> Real:
    """ln Be(a, b), through the log-gamma function so half-integer shapes are exact."""
    scalar = _is_scalar(a, b)
    a_arr, b_arr = _check_shapes(a, b)
    return _out(betaln(a_arr, b_arr), scalar)


def log_binomial_coefficient(n: ArrayLike, k: ArrayLike) -> Real:
    """ln C(n, k) for integers 0 ≤ k ≤ n."""
    scalar = _is_scalar(n, k)
    n_arr = np.asarray(n, dtype=np.float64)
    k_arr = np.asarray(k, dtype=np.float64)
    if np.any(n_arr != np.floor(n_arr)) or np.any(k_arr != np.floor(k_arr)):
        raise DomainError(f"binomial coefficient needs integers, got n={n!r}, k={k!r}")
    if np.any(k_arr < 0) or np.any(k_arr > n_arr):
        raise DomainError(f"k must lie in 0..n, got n={n!r}, k={k!r}")
    return _out(_log_binomial(n_arr, k_arr), scalar)


def _log_binomial(n: ArrayLike, k: ArrayLike) -> NDArray[np.float64]:
    n = np.asarray(n, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


# ---------------------------------------------------------------------------
# Regularized incomplete beta
# ---------------------------------------------------------------------------

def _beta_continued_fraction(
    x: NDArray[np.float64], a: NDArray[np.float64], b: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Modified Lentz evaluation of the incomplete-beta continued fraction.

    Accurate for x < (a+1)/(a+b+2); callers swap to the complement otherwise.
    Converged entries are frozen while the rest keep iterating.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 / _clamp_tiny(1.0 - qab * x / qap)
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for m in range(1, CF_MAX_ITERATIONS + 1):
            m2 = 2 * m
            # even step
            coeff = m * (b - m) * x / ((qam + m2) * (a + m2))
            d = 1.0 / _clamp_tiny(1.0 + coeff * d)
            c = _clamp_tiny(1.0 + coeff / c)
            h = np.where(active, h * d * c, h)
            # odd step
            coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
            d = 1.0 / _clamp_tiny(1.0 + coeff * d)
            c = _clamp_tiny(1.0 + coeff / c)
            delta = d * c
            h = np.where(active, h * delta, h)
            active &= np.abs(delta - 1.0) > CF_TOLERANCE
            if not active.any():
                return h

    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge in {CF_MAX_ITERATIONS} "
        f"iterations for {int(active.sum())} argument(s)"
    )


def log_incomplete_beta_tails(
    x: ArrayLike, a: ArrayLike, b: ArrayLike
) -> tuple[Real, Real]:
    """Return (ln I_x(a,b), ln(1 − I_x(a,b))).

    The tail on the convergent side of the continued fraction is computed
    directly; the other one through ln(1 − eᵛ), so a tail that is too small to
    show up next to 1 still has a finite logarithm.
    """
    scalar = _is_scalar(x, a, b)
    a_arr, b_arr = _check_shapes(a, b)
    x_arr = np.asarray(x, dtype=np.float64)
    if np.any(~((x_arr >= 0.0) & (x_arr <= 1.0))):
        raise DomainError(f"x must lie in [0, 1], got {x!r}")

    x_arr, a_arr, b_arr = np.broadcast_arrays(x_arr, a_arr, b_arr)
    shape = x_arr.shape
    xs, as_, bs = x_arr.ravel(), a_arr.ravel(), b_arr.ravel()

    lower = np.empty(xs.shape, dtype=np.float64)
    upper = np.empty(xs.shape, dtype=np.float64)

    at_zero = xs == 0.0
    at_one = xs == 1.0
    symmetric = (as_ == bs) & (xs == 0.5)
    lower[at_zero], upper[at_zero] = -np.inf, 0.0
    lower[at_one], upper[at_one] = 0.0, -np.inf
    lower[symmetric], upper[symmetric] = _LOG_HALF, _LOG_HALF

    interior = ~(at_zero | at_one | symmetric)
    if interior.any():
        xi, ai, bi = xs[interior], as_[interior], bs[interior]
        swap = xi > (ai + 1.0) / (ai + bi + 2.0)
        log_front = ai * np.log(xi) + bi * np.log1p(-xi) - betaln(ai, bi)
        near_x = np.where(swap, 1.0 - xi, xi)
        near_a = np.where(swap, bi, ai)
        near_b = np.where(swap, ai, bi)
        cf = _beta_continued_fraction(near_x, near_a, near_b)
        log_near = np.minimum(log_front + np.log(cf) - np.log(near_a), 0.0)
        log_far = _log1mexp(log_near)
        lower[interior] = np.where(swap, log_far, log_near)
        upper[interior] = np.where(swap, log_near, log_far)

    lower = lower.reshape(shape)
    upper = upper.reshape(shape)
    return _out(lower, scalar), _out(upper, scalar)


def regularized_incomplete_beta(x: ArrayLike, a: ArrayLike, b: ArrayLike) -> Real:
    """I_x(a, b), the Beta(a, b) CDF at x. Exactly 0 at x=0 and 1 at x=1."""
    scalar = _is_scalar(x, a, b)
    log_lower, log_upper = log_incomplete_beta_tails(x, a, b)
    log_lower = np.asarray(log_lower)
    log_upper = np.asarray(log_upper)
    # take the complement only when it is the smaller (more accurate) tail
    value = np.where(log_upper < log_lower, -np.expm1(log_upper), np.exp(log_lower))
    return _out(value, scalar)


# ---------------------------------------------------------------------------
# Log-sum-exp
# ---------------------------------------------------------------------------

def log_sum_exp(terms: Sequence[float] | NDArray[np.float64]) -> float:
    """ln Σ exp(terms), shifted by the maximum and summed in descending order."""
    values = np.asarray(terms, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("log_sum_exp needs at least one term")
    ordered = np.sort(values)[::-1]
    peak = ordered[0]
    if not np.isfinite(peak):
        return float(peak)
    return float(peak + np.log(np.sum(np.exp(ordered - peak))))
