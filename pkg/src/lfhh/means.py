"""Generalized arithmetic and Gamma-weighted power means, and the
special-means corollary of the trapezoid and midpoint bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .alpha import alpha_power, signed_pow
from .errors import DomainError
from .functions import AlphaPoly, Interval, evaluate, lf_integral, monomial
from .special import check_alpha, gamma, gamma_ratio
from .verify import (
    BOUND_TOL,
    TheoremReport,
    _bound_verdict,
    check_conjugate,
    thm3_check,
    thm4_check,
)


@dataclass(frozen=True)
class MeansRecord:
    a: float
    b: float
    n: int
    alpha: float
    A_value: float
    Ln_value: float


def mean_A(a: float, b: float, alpha: float) -> float:
    """A(a, b) = (a^α + b^α) / 2^α."""
    alpha = check_alpha(alpha)
    return (signed_pow(a, alpha) + signed_pow(b, alpha)) / 2.0**alpha


def _gamma_pair(n: int, alpha: float) -> float:
    """Γ(1+nα)/Γ(1+(n+1)α), also for negative n away from poles."""
    if n >= 0:
        return gamma_ratio(n, n + 1, alpha)
    x, y = 1 + n * alpha, 1 + (n + 1) * alpha
    for z in (x, y):
        if z <= 0 and z == math.floor(z):
            raise DomainError(f"Gamma pole at {z} for n={n}, alpha={alpha}")
    return math.gamma(x) / math.gamma(y)


def _ln_bracket(a: float, b: float, n: int, alpha: float) -> float:
    if n in (-1, 0):
        raise DomainError("L_n is undefined for n in {-1, 0}")
    if a == b:
        raise DomainError("L_n needs a != b")
    if n + 1 >= 0:
        diff = alpha_power(b, n + 1, alpha) - alpha_power(a, n + 1, alpha)
    else:
        diff = signed_pow(b, alpha) ** (n + 1) - signed_pow(a, alpha) ** (n + 1)
    return _gamma_pair(n, alpha) * diff


def mean_Ln(a: float, b: float, n: int, alpha: float) -> float:
    """L_n(a, b) = [Γ(1+nα)/Γ(1+(n+1)α)·(b^((n+1)α) - a^((n+1)α))]^(1/n)."""
    alpha = check_alpha(alpha)
    bracket = _ln_bracket(a, b, n, alpha)
    if bracket <= 0:
        raise DomainError(f"L_n bracket is not positive ({bracket!r}); no real root taken")
    return bracket ** (1.0 / n)


def means_record(a: float, b: float, n: int, alpha: float) -> MeansRecord:
    return MeansRecord(a, b, n, alpha, mean_A(a, b, alpha), mean_Ln(a, b, n, alpha))


def prop1_check(
    a: float,
    b: float,
    n: int,
    alpha: float,
    p: float,
    q: float,
    tol: float = BOUND_TOL,
    grid_n: int = 65,
) -> tuple[TheoremReport, TheoremReport]:
    """Both special-means inequalities, with f(x) = x^(nα).

    The reports' ``lhs`` is the means form as printed.  The theorem-form left
    sides from the trapezoid and midpoint checks are kept in ``details``.
    """
    alpha = check_alpha(alpha)
    check_conjugate(p, q)
    if n <= -2:
        raise DomainError("negative n is outside the alpha-polynomial class")
    if n < 2:
        raise DomainError("special-means checks need n >= 2")
    iv = Interval(a, b)
    if iv.a <= 0 <= iv.b:
        raise DomainError("0 must not lie in [a, b]")
    f = AlphaPoly(monomial(n).coeffs, signed=iv.a < 0)

    norm = gamma(1 + alpha) / iv.length**alpha
    ln_pow = mean_Ln(a, b, n, alpha) ** n
    fa, fb, fm = evaluate(f, a, alpha), evaluate(f, b, alpha), evaluate(f, iv.mid, alpha)
    integral = lf_integral(f, a, b, alpha)

    a_of_powers = mean_A(a**n, b**n, alpha)
    power_of_a = mean_A(a, b, alpha) ** n
    lhs_trap = abs(a_of_powers - norm * ln_pow)
    lhs_mid = abs(power_of_a - norm * ln_pow)

    # printed right-hand sides, evaluated from their own formulas
    g1 = gamma_ratio(1, 2, alpha)
    g2 = gamma_ratio(2, 3, alpha)
    lead = gamma_ratio(n, n - 1, alpha) ** q * (
        abs(alpha_power(a, n - 1, alpha)) ** q + abs(alpha_power(b, n - 1, alpha)) ** q
    )
    c34 = g2 * 1.5**alpha - g1 * 0.5**alpha
    rhs_trap_printed = (
        iv.length**alpha / 2.0**alpha * lead ** (1.0 / q) * g1 ** (1.0 / p) * c34 ** (1.0 / q)
        if c34 >= 0
        else None
    )
    rhs_mid_printed = iv.length**alpha / 4.0**alpha * (2.0**alpha * g1) ** (1.0 / p) * (g1 * lead) ** (1.0 / q)

    t3 = thm3_check(f, iv, alpha, p, q, tol=tol, grid_n=grid_n)
    t4 = thm4_check(f, iv, alpha, p, q, tol=tol, grid_n=grid_n)

    reports = []
    for name, lhs, printed, thm, theorem_lhs in (
        ("prop1_trap", lhs_trap, rhs_trap_printed, t3, abs((fa + fb) / 2.0**alpha - norm * integral)),
        ("prop1_mid", lhs_mid, rhs_mid_printed, t4, abs(fm - norm * integral)),
    ):
        rep = TheoremReport(
            name,
            alpha,
            (iv.a, iv.b),
            f"x^({n}alpha)",
            p=p,
            q=q,
            lhs=lhs,
            rhs_paper=printed,
            rhs_engine=thm.rhs_engine,
            status=thm.status,
        )
        _bound_verdict(rep, tol)
        rep.details.update(theorem_report=thm, theorem_lhs=theorem_lhs)
        reports.append(rep)

    trap, mid = reports
    id_a = math.isclose(a_of_powers, (fa + fb) / 2.0**alpha, rel_tol=1e-12, abs_tol=1e-12)
    id_l = math.isclose(norm * ln_pow, norm * integral, rel_tol=1e-12, abs_tol=1e-12)
    id_mid = math.isclose(power_of_a, fm, rel_tol=1e-12, abs_tol=1e-12)
    trap.details.update(identity_A=id_a, identity_L=id_l)
    mid.details.update(identity_L=id_l, identity_midpoint=id_mid)
    trap.note = f"A(a^n,b^n)=(f(a)+f(b))/2^alpha: {id_a}; (L_n)^n=aI_b f: {id_l}"
    mid.note = (
        f"(L_n)^n=aI_b f: {id_l}; (A(a,b))^n=f((a+b)/2): {id_mid}"
        + ("" if id_mid else f" ({power_of_a:.17g} vs {fm:.17g}); theorem-form lhs={mid.details['theorem_lhs']:.17g}")
    )
    return trap, mid
