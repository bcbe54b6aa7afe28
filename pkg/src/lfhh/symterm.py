"""Closed term algebra c·X^(pα)·Y^(qα) over two linear forms X, Y in t.

Every kernel integral of the Hermite-Hadamard chain lives in this class.
Integration is exact: repeated fractal integration by parts moves one power
from the second base onto the first until only a single linear-form power is
left, which has the Gamma-ratio primitive

    D^α[(At+B)^(kα)] = Γ(1+kα)/Γ(1+(k-1)α) · A^α · (At+B)^((k-1)α).

Powers of a base are k-fold products of signed α-powers, ``(X^α)^k``.

The operational calculus is not route independent for α < 1: the primitive
of a product depends on which factor is integrated.  The convention here is
fixed and documented on :func:`integrate_two_form`: the *first* base is
integrated, the *second* is differentiated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .alpha import alpha_power, alpha_power_array, signed_pow
from .errors import (
    DegenerateBaseError,
    DomainError,
    RecursionDepthError,
    SignChangeError,
)
from .special import gamma_ratio

MAX_TOTAL_POWER = 24


@dataclass(frozen=True)
class LinForm:
    """The linear form ``slope·t + intercept``."""

    slope: float
    intercept: float = 0.0

    def __call__(self, t):
        return self.slope * t + self.intercept

    @property
    def is_constant(self) -> bool:
        return self.slope == 0

    def root(self) -> float | None:
        if self.slope == 0:
            return None
        return -self.intercept / self.slope

    def __neg__(self) -> LinForm:
        return LinForm(-self.slope, -self.intercept)


ONE = LinForm(0.0, 1.0)
T = LinForm(1.0, 0.0)


@dataclass(frozen=True)
class PowTerm:
    """``coeff · first^(p·α) · second^(q·α)``.

    A first base with ``p = 0`` is still meaningful: it is the base against
    which a constant is integrated.
    """

    coeff: float
    first: LinForm = ONE
    p: int = 0
    second: LinForm = ONE
    q: int = 0

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DomainError("term exponents must be non-negative integers")
        if int(self.p) != self.p or int(self.q) != self.q:
            raise DomainError("term exponents must be integers")

    def scaled(self, c: float) -> PowTerm:
        return PowTerm(self.coeff * c, self.first, self.p, self.second, self.q)


def _proportional(x: LinForm, y: LinForm) -> bool:
    return math.isclose(x.slope * y.intercept, y.slope * x.intercept, rel_tol=1e-13, abs_tol=0.0)


def normalize(term: PowTerm, alpha: float) -> PowTerm:
    """Canonical form of a term.

    Zero-slope bases are folded into the coefficient, a trivial second factor
    is dropped, and a second base proportional to the first is merged into it
    through multiplicativity of signed powers.
    """
    c, x, p, y, q = term.coeff, term.first, term.p, term.second, term.q
    if q == 0:
        y = ONE
    elif y.is_constant:
        c *= alpha_power(y.intercept, q, alpha)
        y, q = ONE, 0
    if x.is_constant:
        c *= alpha_power(x.intercept, p, alpha)
        x, p = ONE, 0
        if q:
            x, p, y, q = y, q, ONE, 0
    elif q and _proportional(x, y):
        # y = r·x with r = y.slope / x.slope
        r = y.slope / x.slope
        c *= alpha_power(r, q, alpha)
        p, y, q = p + q, ONE, 0
    if c == 0:
        return PowTerm(0.0)
    return PowTerm(c, x, p, y, q)


def term_eval(term: PowTerm, t, alpha: float):
    """Evaluate a term at a scalar or array ``t``."""
    if isinstance(t, np.ndarray):
        return (
            term.coeff
            * alpha_power_array(term.first(t), term.p, alpha)
            * alpha_power_array(term.second(t), term.q, alpha)
        )
    return (
        term.coeff
        * alpha_power(term.first(t), term.p, alpha)
        * alpha_power(term.second(t), term.q, alpha)
    )


def terms_eval(terms, t, alpha: float):
    total = 0.0
    for term in terms:
        total = total + term_eval(term, t, alpha)
    return total


def term_alpha_derivative(term: PowTerm, alpha: float) -> list[PowTerm]:
    """Exact α-derivative by power, linear chain and product rules."""
    term = normalize(term, alpha)
    c, x, p, y, q = term.coeff, term.first, term.p, term.second, term.q
    out = []
    if p >= 1 and not x.is_constant:
        k = c * gamma_ratio(p, p - 1, alpha) * signed_pow(x.slope, alpha)
        out.append(PowTerm(k, x, p - 1, y, q))
    if q >= 1 and not y.is_constant:
        k = c * gamma_ratio(q, q - 1, alpha) * signed_pow(y.slope, alpha)
        out.append(PowTerm(k, x, p, y, q - 1))
    return out


def antiderivative_single(base: LinForm, k: int, coeff: float, alpha: float) -> PowTerm:
    """Primitive of ``coeff·base^(kα)`` with respect to (dt)^α / Γ(1+α).

    A constant with no base (``slope == 0``, ``k == 0``) gets the primitive
    ``coeff·t^α/Γ(1+α)``.
    """
    if base.is_constant:
        if k != 0:
            raise DegenerateBaseError("zero-slope base with positive exponent has no power primitive")
        return PowTerm(coeff * gamma_ratio(0, 1, alpha), T, 1)
    c = coeff * gamma_ratio(k, k + 1, alpha) / signed_pow(base.slope, alpha)
    return PowTerm(c, base, k + 1)


def _check_sign_constant(form: LinForm, lo: float, hi: float) -> None:
    if form.is_constant:
        return
    u, v = form(lo), form(hi)
    if (u < 0 < v) or (v < 0 < u):
        raise SignChangeError(
            f"base {form.slope}*t{form.intercept:+} changes sign inside [{min(lo, hi)}, {max(lo, hi)}]"
        )


def integrate_two_form(term: PowTerm, lo: float, hi: float, alpha: float) -> float:
    """(1/Γ(1+α)) ∫_lo^hi term (dt)^α by finite by-parts reduction.

    With u = Y^(qα) and dv = X^(pα)(dt)^α, each step lowers q by one and
    raises p by one; at q = 0 the single-base primitive closes the sum.
    Both bases must keep a constant sign on the interval.
    """
    term = normalize(term, alpha)
    c, x, p, y, q = term.coeff, term.first, term.p, term.second, term.q
    if c == 0:
        return 0.0
    if p + q > MAX_TOTAL_POWER:
        raise RecursionDepthError(f"p + q = {p + q} exceeds the cap {MAX_TOTAL_POWER}")
    _check_sign_constant(x, lo, hi)
    _check_sign_constant(y, lo, hi)

    if x.is_constant:
        g = antiderivative_single(ONE, 0, c, alpha)
        return term_eval(g, hi, alpha) - term_eval(g, lo, alpha)

    ax = signed_pow(x.slope, alpha)
    ay = signed_pow(y.slope, alpha) if q else 0.0
    xh, xl = x(hi), x(lo)
    yh, yl = y(hi), y(lo)
    total = 0.0
    while True:
        k = c * gamma_ratio(p, p + 1, alpha) / ax
        if q == 0:
            total += k * (alpha_power(xh, p + 1, alpha) - alpha_power(xl, p + 1, alpha))
            return total
        total += k * (
            alpha_power(xh, p + 1, alpha) * alpha_power(yh, q, alpha)
            - alpha_power(xl, p + 1, alpha) * alpha_power(yl, q, alpha)
        )
        c = -k * gamma_ratio(q, q - 1, alpha) * ay
        p, q = p + 1, q - 1


def integrate_terms(terms, lo: float, hi: float, alpha: float) -> float:
    return math.fsum(integrate_two_form(t, lo, hi, alpha) for t in terms)


@dataclass(frozen=True)
class PiecewiseTermList:
    """Term lists on consecutive intervals ``[t_i, t_(i+1)]``."""

    breakpoints: tuple[float, ...]
    pieces: tuple[tuple[PowTerm, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "pieces", tuple(tuple(p) for p in self.pieces))
        if len(bp) < 2:
            raise DomainError("a piecewise term list needs at least two breakpoints")
        if any(b1 >= b2 for b1, b2 in zip(bp, bp[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bp) - 1:
            raise DomainError("need exactly one term list per interval")

    @classmethod
    def from_terms(cls, terms, lo: float, hi: float) -> PiecewiseTermList:
        """Same terms on [lo, hi], split at every interior root of a base."""
        cuts = {lo, hi}
        for term in terms:
            for form, k in ((term.first, term.p), (term.second, term.q)):
                r = form.root()
                if k and r is not None and lo < r < hi:
                    cuts.add(r)
        bp = tuple(sorted(cuts))
        return cls(bp, tuple(tuple(terms) for _ in bp[1:]))

    @property
    def lo(self) -> float:
        return self.breakpoints[0]

    @property
    def hi(self) -> float:
        return self.breakpoints[-1]

    def piece_index(self, t: float) -> int:
        if not self.lo <= t <= self.hi:
            raise DomainError(f"{t} outside [{self.lo}, {self.hi}]")
        for i, right in enumerate(self.breakpoints[1:-1]):
            if t < right:
                return i
        return len(self.pieces) - 1

    def __call__(self, t: float, alpha: float) -> float:
        return terms_eval(self.pieces[self.piece_index(t)], t, alpha)

    def eval_array(self, t: np.ndarray, alpha: float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if np.any((t < self.lo) | (t > self.hi)):
            raise DomainError("evaluation points outside the piecewise support")
        idx = np.searchsorted(np.asarray(self.breakpoints[1:-1]), t, side="right")
        out = np.zeros_like(t)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = terms_eval(piece, t[mask], alpha)
        return out


def integrate_piecewise(pw: PiecewiseTermList, alpha: float) -> float:
    return math.fsum(
        integrate_terms(piece, lo, hi, alpha)
        for piece, lo, hi in zip(pw.pieces, pw.breakpoints, pw.breakpoints[1:])
    )


def abs_term(term: PowTerm, lo: float, hi: float) -> PowTerm:
    """|term| on an interval where both bases keep their sign.

    |X^(kα)| = (|X|)^(kα), and |X| is X or -X on a sign-constant interval.
    """
    mid = 0.5 * (lo + hi)

    def positive(form: LinForm, k: int) -> LinForm:
        if k == 0 or form.is_constant:
            return LinForm(form.slope, abs(form.intercept)) if form.is_constant else form
        _check_sign_constant(form, lo, hi)
        return -form if form(mid) < 0 else form

    return PowTerm(
        abs(term.coeff),
        positive(term.first, term.p),
        term.p,
        positive(term.second, term.q),
        term.q,
    )
