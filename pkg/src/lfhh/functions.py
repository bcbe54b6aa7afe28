"""Generalized functions: α-polynomials and scaled Mittag-Leffler functions.

The local fractional integral is defined operationally, by anti-differentiation
with the Gamma-ratio power rule, never by fractal Riemann sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .alpha import alpha_power, alpha_power_array, signed_pow, signed_pow_array
from .errors import ConvergenceError, DomainError, UnsupportedError
from .special import (
    MAX_SERIES_TERMS,
    check_alpha,
    gamma_ratio,
    mittag_leffler,
    mittag_leffler_array,
)
from .symterm import LinForm, PiecewiseTermList, PowTerm, T, integrate_piecewise, integrate_terms

MAX_DEGREE = 12


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not self.a < self.b:
            raise DomainError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def mid(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def length(self) -> float:
        return self.b - self.a

    def __iter__(self):
        yield self.a
        yield self.b


@dataclass(frozen=True)
class AlphaPoly:
    """f(x) = Σ_k c_k·x^(kα).

    Fractional powers of negative x are only evaluated when ``signed`` is set.
    """

    coeffs: tuple[float, ...]
    signed: bool = False

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (0.0,)
        if len(coeffs) - 1 > MAX_DEGREE:
            raise DomainError(f"alpha-polynomial degree is capped at {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else 0

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def terms(self) -> list[tuple[int, float]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c != 0]

    def scaled(self, c: float) -> AlphaPoly:
        return AlphaPoly(tuple(c * x for x in self.coeffs), self.signed)


@dataclass(frozen=True)
class MittagLefflerExp:
    """f(x) = coeff·E_α((scale·x)^α)."""

    scale: float = 1.0
    coeff: float = 1.0

    def scaled(self, c: float) -> MittagLefflerExp:
        return MittagLefflerExp(self.scale, self.coeff * c)


GeneralizedFunction = Union[AlphaPoly, MittagLefflerExp, PiecewiseTermList]


def monomial(k: int, coeff: float = 1.0) -> AlphaPoly:
    return AlphaPoly((0.0,) * k + (coeff,))


def _check_domain(f: AlphaPoly, x) -> None:
    if f.signed or f.is_constant:
        return
    if np.any(np.asarray(x) < 0):
        raise DomainError("alpha-polynomial evaluated at x < 0 without signed semantics")


def evaluate(f: GeneralizedFunction, x: float, alpha: float) -> float:
    """Pointwise value of ``f`` at ``x``."""
    if isinstance(f, AlphaPoly):
        _check_domain(f, x)
        return math.fsum(c * alpha_power(x, k, alpha) for k, c in f.terms())
    if isinstance(f, MittagLefflerExp):
        return f.coeff * mittag_leffler(alpha, signed_pow(f.scale * x, alpha))
    if isinstance(f, PiecewiseTermList):
        return f(x, alpha)
    raise UnsupportedError(f"cannot evaluate {type(f).__name__}")


def evaluate_array(f: GeneralizedFunction, x, alpha: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if isinstance(f, AlphaPoly):
        _check_domain(f, x)
        out = np.zeros_like(x)
        for k, c in f.terms():
            out += c * alpha_power_array(x, k, alpha)
        return out
    if isinstance(f, MittagLefflerExp):
        return f.coeff * mittag_leffler_array(alpha, signed_pow_array(f.scale * x, alpha))
    if isinstance(f, PiecewiseTermList):
        return f.eval_array(x, alpha)
    raise UnsupportedError(f"cannot evaluate {type(f).__name__}")


def deriv_alpha(f: GeneralizedFunction, alpha: float) -> GeneralizedFunction:
    """Exact local fractional derivative.

    x^(kα) ↦ Γ(1+kα)/Γ(1+(k-1)α)·x^((k-1)α); E_α((sx)^α) ↦ s^α·E_α((sx)^α).
    """
    if isinstance(f, AlphaPoly):
        out = [c * gamma_ratio(k, k - 1, alpha) for k, c in enumerate(f.coeffs) if k >= 1]
        return AlphaPoly(tuple(out) or (0.0,), f.signed)
    if isinstance(f, MittagLefflerExp):
        return MittagLefflerExp(f.scale, f.coeff * signed_pow(f.scale, alpha))
    raise UnsupportedError("deriv_alpha is defined for AlphaPoly and MittagLefflerExp only")


def poly_terms(f: AlphaPoly) -> list[PowTerm]:
    """Monomials of ``f`` as single-base terms in x (constant kept on base x)."""
    return [PowTerm(c, T, k) for k, c in f.terms()]


def _split_at_zero(a: float, b: float) -> list[tuple[float, float]]:
    lo, hi = min(a, b), max(a, b)
    if lo < 0 < hi:
        parts = [(lo, 0.0), (0.0, hi)]
    else:
        parts = [(lo, hi)]
    return parts


def _ml_primitive(f: MittagLefflerExp, x: float, alpha: float) -> float:
    """Σ_k s^(kα)·x^((k+1)α)/Γ(1+(k+1)α), the termwise primitive of E_α((sx)^α)."""
    if x == 0:
        return 0.0
    sigma = signed_pow(f.scale, alpha)
    beta = signed_pow(x, alpha)
    if sigma == 0:
        return beta * gamma_ratio(0, 1, alpha)
    log_s, log_b = math.log(abs(sigma)), math.log(abs(beta))
    neg_s, neg_b = sigma < 0, beta < 0
    total, comp, prev = 0.0, 0.0, math.inf
    for k in range(MAX_SERIES_TERMS):
        try:
            mag = math.exp(k * log_s + (k + 1) * log_b - math.lgamma(1.0 + (k + 1) * alpha))
        except OverflowError:
            raise ConvergenceError("Mittag-Leffler integral overflows double precision") from None
        odd = (neg_s and k % 2 == 1) != (neg_b and (k + 1) % 2 == 1)
        term = -mag if odd else mag
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if mag <= prev and mag < 1e-17 * max(abs(total), 1e-300):
            return total
        prev = mag
    raise ConvergenceError("Mittag-Leffler integral series did not converge")


def lf_integral(f: GeneralizedFunction, a: float, b: float, alpha: float) -> float:
    """aI_b^(α) f = (1/Γ(1+α)) ∫_a^b f(x) (dx)^α.

    ``a > b`` is allowed and flips the sign.
    """
    alpha = check_alpha(alpha)
    if a == b:
        return 0.0
    if isinstance(f, AlphaPoly):
        if not f.signed and not f.is_constant and min(a, b) < 0:
            raise DomainError("integration range reaches x < 0 without signed semantics")
        terms = poly_terms(f)
        sign = 1.0 if a < b else -1.0
        return sign * math.fsum(integrate_terms(terms, lo, hi, alpha) for lo, hi in _split_at_zero(a, b))
    if isinstance(f, MittagLefflerExp):
        return f.coeff * (_ml_primitive(f, b, alpha) - _ml_primitive(f, a, alpha))
    if isinstance(f, PiecewiseTermList):
        if (min(a, b), max(a, b)) != (f.lo, f.hi):
            raise DomainError("piecewise functions integrate over their own support only")
        val = integrate_piecewise(f, alpha)
        return val if a < b else -val
    raise UnsupportedError(f"cannot integrate {type(f).__name__}")


def compose_affine(f: GeneralizedFunction, u: float, v: float) -> list[PowTerm]:
    """f(u·t + v) as terms in t."""
    if not isinstance(f, AlphaPoly):
        raise UnsupportedError("affine composition leaves the closed class for this variant")
    form = LinForm(u, v)
    return [PowTerm(c, form, k) for k, c in f.terms()]


def parse_function(literal: str) -> GeneralizedFunction:
    """Parse ``poly:c0,c1,...`` or ``ml:s``."""
    kind, sep, body = literal.strip().partition(":")
    if not sep or not body.strip():
        raise ValueError(f"malformed function literal {literal!r}")
    try:
        values = [float(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ValueError(f"malformed function literal {literal!r}") from exc
    if any(not math.isfinite(v) for v in values):
        raise ValueError(f"non-finite value in function literal {literal!r}")
    if kind == "poly":
        if len(values) - 1 > MAX_DEGREE:
            raise ValueError(f"degree above {MAX_DEGREE} in {literal!r}")
        return AlphaPoly(tuple(values))
    if kind == "ml":
        if len(values) != 1:
            raise ValueError(f"ml literal takes exactly one scale: {literal!r}")
        return MittagLefflerExp(values[0])
    raise ValueError(f"unknown function kind {kind!r} in {literal!r}")


def format_function(f: GeneralizedFunction) -> str:
    if isinstance(f, AlphaPoly):
        return "poly:" + ",".join(format(c, ".17g") for c in f.coeffs)
    if isinstance(f, MittagLefflerExp):
        s = "ml:" + format(f.scale, ".17g")
        return s if f.coeff == 1.0 else f"{format(f.coeff, '.17g')}*{s}"
    return "piecewise"
