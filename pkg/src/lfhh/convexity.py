"""Sampling check of generalized convexity.

f is generalized convex when f(λx₁+(1-λ)x₂) ≤ λ^α f(x₁) + (1-λ)^α f(x₂).
The check scans a uniform grid of n points and λ = m/n, m = 1..n-1.  Every
combination point lands on a finer grid of n(n-1)+1 points, so f is evaluated
once on that grid and the scan is pure index arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import DomainError
from .functions import Interval, evaluate_array
from .special import check_alpha

DEFAULT_GRID = 65
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Witness:
    x1: float
    x2: float
    lam: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ConvexityReport:
    passed: bool
    witness: Witness | None
    samples_used: int
    max_excess: float


def _values(f, xs: np.ndarray, alpha: float) -> np.ndarray:
    if callable(f) and not hasattr(f, "pieces"):
        return np.asarray(f(xs), dtype=float)
    return evaluate_array(f, xs, alpha)


def check_generalized_convex(
    f,
    iv: Interval,
    alpha: float,
    grid_n: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    backend: str | None = None,
) -> ConvexityReport:
    """Scan (x₁, x₂, λ) triples; the witness is the first violation in (x₁, x₂, λ) order.

    ``f`` is a generalized function or a vectorised callable of x.
    """
    alpha = check_alpha(alpha)
    if grid_n < 3:
        raise DomainError("grid_n must be at least 3")
    n = int(grid_n)
    fine = n * (n - 1)
    xs = iv.a + iv.length * np.arange(fine + 1) / fine
    xs[-1] = iv.b
    values = _values(f, xs, alpha)
    lam = np.arange(1, n) / n
    wl = lam**alpha
    wr = (1.0 - lam) ** alpha
    first, worst = kernels.scan_convexity(values, wl, wr, n, tol, backend=backend)
    samples = n * n * (n - 1)
    if first < 0:
        return ConvexityReport(True, None, samples, worst)
    i, rest = divmod(first, n * (n - 1))
    j, m0 = divmod(rest, n - 1)
    m = m0 + 1
    lhs = float(values[m * i + (n - m) * j])
    rhs = float(wl[m0] * values[i * n] + wr[m0] * values[j * n])
    witness = Witness(float(xs[i * n]), float(xs[j * n]), m / n, lhs, rhs)
    return ConvexityReport(False, witness, samples, worst)


def power_of_abs(g, q: float, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """x ↦ |g(x)|^q as a vectorised callable."""

    def h(x):
        return np.abs(evaluate_array(g, x, alpha)) ** q

    return h
