"""Gamma, Gamma-ratio chains and the one-parameter Mittag-Leffler function.

Every constant in the local fractional calculus has the shape
Γ(1+jα)/Γ(1+kα).  Ratios are formed in log space so they stay finite for the
largest arguments the engine produces (k ≤ 25, α ≤ 1).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DomainError

MAX_SERIES_TERMS = 10_000

# math.gamma is exact to a few ulp up to here; above it only log-space is used.
_DIRECT_GAMMA_LIMIT = 30.0


def check_alpha(alpha: float) -> float:
    """Validate a fractal order and return it as a float."""
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    return alpha


def lgamma(x: float) -> float:
    """log Γ(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma is only defined here for x > 0, got {x!r}")
    return math.lgamma(x)


def gamma(x: float) -> float:
    """Γ(x) for x > 0.

    Small arguments use the direct Lanczos evaluation of the C library,
    larger ones go through :func:`lgamma`.
    """
    if not x > 0:
        raise DomainError(f"gamma is only defined here for x > 0, got {x!r}")
    if x <= _DIRECT_GAMMA_LIMIT:
        return math.gamma(x)
    return math.exp(math.lgamma(x))


def gamma_ratio(j: int, k: int, alpha: float) -> float:
    """Γ(1+jα) / Γ(1+kα) for integers j, k ≥ 0."""
    if j < 0 or k < 0:
        raise DomainError(f"gamma_ratio needs j, k >= 0, got ({j}, {k})")
    if j == k:
        return 1.0
    return math.exp(math.lgamma(1.0 + j * alpha) - math.lgamma(1.0 + k * alpha))


def _ml_term(k: int, logabs: float, sign: float, alpha: float) -> float:
    # z^k / Γ(1+kα) without forming z^k or Γ separately
    try:
        mag = math.exp(k * logabs - math.lgamma(1.0 + k * alpha))
    except OverflowError:
        raise ConvergenceError(f"Mittag-Leffler term {k} overflows double precision") from None
    return mag if (sign > 0 or k % 2 == 0) else -mag


def mittag_leffler(alpha: float, z: float, tol: float = 1e-15) -> float:
    """E_α(z) = Σ_k z^k / Γ(1+kα).

    The caller passes ``z = x^α`` already powered.  Summation stops at the
    first term whose magnitude drops below ``tol·|sum|`` (or below ``tol`` when
    the running sum is zero) once the terms have started to shrink.
    """
    alpha = check_alpha(alpha)
    if not tol > 0:
        raise DomainError("tol must be positive")
    z = float(z)
    if z == 0.0:
        return 1.0
    logabs = math.log(abs(z))
    sign = 1.0 if z > 0 else -1.0
    total = 1.0
    prev = 1.0
    # Kahan compensation keeps alternating sums for z < 0 tight
    comp = 0.0
    for k in range(1, MAX_SERIES_TERMS):
        term = _ml_term(k, logabs, sign, alpha)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        shrinking = abs(term) <= abs(prev)
        prev = term
        if shrinking and abs(term) < tol * (abs(total) if total != 0.0 else 1.0):
            return total
    raise ConvergenceError(
        f"Mittag-Leffler series for z={z!r}, alpha={alpha!r} did not converge "
        f"in {MAX_SERIES_TERMS} terms"
    )


def mittag_leffler_array(alpha: float, z: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """Vectorised :func:`mittag_leffler` over an array of already-powered z."""
    alpha = check_alpha(alpha)
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(z))
    neg = z < 0
    prev = np.ones_like(z)
    for k in range(1, MAX_SERIES_TERMS):
        with np.errstate(over="ignore"):
            mag = np.exp(k * logabs - math.lgamma(1.0 + k * alpha))
        if not np.all(np.isfinite(mag[z != 0])):
            raise ConvergenceError(f"Mittag-Leffler term {k} overflows double precision")
        term = np.where(neg & (k % 2 == 1), -mag, mag)
        total = total + term
        done = (np.abs(term) <= np.abs(prev)) & (
            np.abs(term) < tol * np.maximum(np.abs(total), 1e-300)
        )
        prev = term
        if np.all(done | (z == 0)):
            return total
    raise ConvergenceError("vectorised Mittag-Leffler series did not converge")
