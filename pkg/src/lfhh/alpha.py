"""Real-number embedding of the α-type set R^α.

An element a^α is represented by the real sign(a)·|a|^α.  The embedding is
multiplicative, odd, and keeps 0 and 1 fixed; it keeps ordinary real addition,
so the formal law a^α + b^α = (a+b)^α is not available.
"""

from __future__ import annotations

import math

import numpy as np


def signed_pow(x: float, alpha: float) -> float:
    """sign(x)·|x|^α, with signed_pow(0, α) == 0."""
    if x == 0:
        return 0.0
    return math.copysign(abs(x) ** alpha, x)


def signed_pow_array(x, alpha: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** alpha


def alpha_power(x: float, k: int, alpha: float) -> float:
    """The element x^(kα) = (x^α)^k, i.e. k-fold product of x^α in R^α.

    For k = 0 this is 1 (including at x = 0).
    """
    if k == 0:
        return 1.0
    return signed_pow(x, alpha) ** k


def alpha_power_array(x, k: int, alpha: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if k == 0:
        return np.ones_like(x)
    return signed_pow_array(x, alpha) ** k
