"""Verifiers for the fractal Hermite-Hadamard identities and bounds.

Each verifier returns a :class:`TheoremReport` holding both sides.  Bounds
carry two right-hand sides: ``rhs_paper`` from the constants as printed, and
``rhs_engine`` from the same derivation chain with every kernel integral
evaluated by the by-parts engine.  Verdicts are taken against the engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .alpha import signed_pow
from .convexity import check_generalized_convex, power_of_abs
from .errors import ClassClosureError, DomainError, ExponentError, UnsupportedError
from .functions import (
    AlphaPoly,
    GeneralizedFunction,
    Interval,
    compose_affine,
    deriv_alpha,
    evaluate,
    format_function,
    lf_integral,
)
from .special import check_alpha, gamma, gamma_ratio
from .symterm import (
    LinForm,
    PiecewiseTermList,
    PowTerm,
    T,
    abs_term,
    integrate_piecewise,
    integrate_two_form,
)

IDENTITY_TOL = 1e-9
BOUND_TOL = 1e-12

KERNEL_KINDS = ("eq32", "eq34", "eq35", "eq36_t2", "eq36_t_1mt")


@dataclass
class TheoremReport:
    theorem: str
    alpha: float
    interval: tuple[float, float]
    function: str
    p: float | None = None
    q: float | None = None
    lhs: float = math.nan
    rhs_paper: float | None = None
    rhs_engine: float | None = None
    residual: float | None = None
    satisfied_paper: bool | None = None
    satisfied_engine: bool | None = None
    margin_engine: float | None = None
    status: str = "ok"
    note: str = ""
    details: dict = field(default_factory=dict, repr=False)

    @property
    def violated(self) -> bool:
        return self.status == "ok" and self.satisfied_engine is False


def check_conjugate(p: float, q: float) -> None:
    if not (p > 1 and q > 1):
        raise ExponentError(f"Hölder exponents need p, q > 1, got p={p}, q={q}")
    if abs(1.0 / p + 1.0 / q - 1.0) >= 1e-12:
        raise ExponentError(f"p={p}, q={q} are not conjugate")


def _kernel_pieces(kind: str, iv: Interval | None) -> PiecewiseTermList:
    down, up = LinForm(-2.0, 1.0), LinForm(2.0, -1.0)
    if kind == "eq32":
        return PiecewiseTermList((0.0, 0.5, 1.0), ((PowTerm(1.0, down, 1),), (PowTerm(1.0, up, 1),)))
    if kind == "eq34":
        # the t^α weight is integrated, the |1-2t|^α kernel differentiated
        return PiecewiseTermList(
            (0.0, 0.5, 1.0),
            ((PowTerm(1.0, T, 1, down, 1),), (PowTerm(1.0, T, 1, up, 1),)),
        )
    if kind == "eq35":
        if iv is None:
            raise DomainError("eq35 needs an interval")
        a, b, m = iv.a, iv.b, iv.mid
        return PiecewiseTermList(
            (a, m, b), ((PowTerm(1.0, LinForm(1.0, -a), 1),), (PowTerm(1.0, LinForm(-1.0, b), 1),))
        )
    if kind == "eq36_t2":
        return PiecewiseTermList((0.0, 1.0), ((PowTerm(1.0, T, 1, T, 1),),))
    if kind == "eq36_t_1mt":
        return PiecewiseTermList((0.0, 1.0), ((PowTerm(1.0, T, 1, LinForm(-1.0, 1.0), 1),),))
    raise DomainError(f"unknown kernel constant {kind!r}")


def _printed_constant(kind: str, alpha: float, iv: Interval | None) -> float:
    g1 = gamma_ratio(1, 2, alpha)
    g2 = gamma_ratio(2, 3, alpha)
    if kind == "eq32":
        return g1
    if kind == "eq34":
        return -g1 * 0.5**alpha + g2 * 1.5**alpha
    if kind == "eq35":
        return g1 * 2.0**alpha * (iv.length / 2.0) ** (2 * alpha)
    if kind == "eq36_t2":
        return g2
    if kind == "eq36_t_1mt":
        return g1 - g2
    raise DomainError(f"unknown kernel constant {kind!r}")


def kernel_constant(kind: str, alpha: float, iv: Interval | None = None) -> tuple[float, float]:
    """(engine value, printed value) of one kernel integral."""
    alpha = check_alpha(alpha)
    engine = integrate_piecewise(_kernel_pieces(kind, iv), alpha)
    return engine, _printed_constant(kind, alpha, iv)


def _require_poly(f: GeneralizedFunction, iv: Interval, what: str) -> AlphaPoly:
    if not isinstance(f, AlphaPoly):
        raise UnsupportedError(f"{what} needs an alpha-polynomial")
    if iv.a < 0 and not f.signed and not f.is_constant:
        raise DomainError(f"{what}: interval reaches x < 0 without signed semantics")
    return f


def _mean_value(f: GeneralizedFunction, iv: Interval, alpha: float) -> float:
    """Γ(1+α)/(b-a)^α · aI_b f."""
    return gamma(1 + alpha) / iv.length**alpha * lf_integral(f, iv.a, iv.b, alpha)


def _identity_verdict(rep: TheoremReport, tol: float) -> TheoremReport:
    rep.residual = rep.lhs - rep.rhs_engine
    rep.satisfied_engine = abs(rep.residual) <= tol * max(1.0, abs(rep.lhs))
    rep.margin_engine = None
    return rep


def thm1_residual(f: GeneralizedFunction, iv: Interval, alpha: float, tol: float = IDENTITY_TOL) -> TheoremReport:
    """Trapezoid-type identity with kernel (1-2t)^α."""
    alpha = check_alpha(alpha)
    f = _require_poly(f, iv, "thm1")
    a, b = iv.a, iv.b
    fa, fb = evaluate(f, a, alpha), evaluate(f, b, alpha)
    lhs = (fa + fb) / 2.0**alpha - _mean_value(f, iv, alpha)

    # f^(α)(ta+(1-t)b) is integrated, (1-2t)^α differentiated
    kernel = LinForm(-2.0, 1.0)
    terms = [PowTerm(t.coeff, t.first, t.p, kernel, 1) for t in compose_affine(deriv_alpha(f, alpha), a - b, b)]
    pw = PiecewiseTermList((0.0, 0.5, 1.0), (terms, terms))
    rhs = signed_pow(b - a, alpha) / 2.0**alpha * integrate_piecewise(pw, alpha)

    rep = TheoremReport("thm1", alpha, (a, b), format_function(f), lhs=lhs, rhs_engine=rhs)
    _identity_verdict(rep, tol)
    c0 = f.coeffs[0]
    if alpha != 1.0 and c0 != 0.0:
        defect = c0 * (2.0 ** (1 - alpha) - (signed_pow(b, alpha) - signed_pow(a, alpha)) / (b - a) ** alpha)
        rep.note = (
            f"constant term adds {defect:.17g} to the left side only; "
            "the right side sees f^(alpha), which drops constants"
        )
        rep.details["constant_defect"] = defect
    return rep


def s_kernel(iv: Interval) -> PiecewiseTermList:
    """S(x) = (x-a)^α on [a, m], (x-b)^α on [m, b]."""
    return PiecewiseTermList(
        (iv.a, iv.mid, iv.b),
        ((PowTerm(1.0, LinForm(1.0, -iv.a), 1),), (PowTerm(1.0, LinForm(1.0, -iv.b), 1),)),
    )


def thm2_residual(f: GeneralizedFunction, iv: Interval, alpha: float, tol: float = IDENTITY_TOL) -> TheoremReport:
    """Midpoint-type identity with kernel S(x)."""
    alpha = check_alpha(alpha)
    f = _require_poly(f, iv, "thm2")
    a, b, m = iv.a, iv.b, iv.mid
    fm = evaluate(f, m, alpha)
    lhs = fm - _mean_value(f, iv, alpha)

    df = deriv_alpha(f, alpha)
    pieces = []
    for (kernel,) in s_kernel(iv).pieces:
        pieces.append(tuple(PowTerm(c, T, k, kernel.first, 1) for k, c in df.terms()))
    pw = PiecewiseTermList((a, m, b), tuple(pieces))
    rhs = integrate_piecewise(pw, alpha) / (b - a) ** alpha

    rep = TheoremReport("thm2", alpha, (a, b), format_function(f), lhs=lhs, rhs_engine=rhs)
    _identity_verdict(rep, tol)
    if alpha != 1.0:
        rep.note = (
            "by parts each half of S contributes ((b-a)/2)^alpha f(m); their sum is "
            f"2^(1-alpha) f(m) = {2.0 ** (1 - alpha) * fm:.17g}, not f(m) = {fm:.17g}"
        )
    return rep


def thmD_check(
    f: GeneralizedFunction,
    iv: Interval,
    alpha: float,
    tol: float = BOUND_TOL,
    grid_n: int = 65,
) -> TheoremReport:
    """f(m) ≤ Γ(1+α)/(b-a)^α·aI_b f ≤ (f(a)+f(b))/2^α."""
    alpha = check_alpha(alpha)
    a, b = iv.a, iv.b
    left = evaluate(f, iv.mid, alpha)
    middle = _mean_value(f, iv, alpha)
    right = (evaluate(f, a, alpha) + evaluate(f, b, alpha)) / 2.0**alpha
    m_left, m_right = middle - left, right - middle
    rep = TheoremReport(
        "thmD",
        alpha,
        (a, b),
        format_function(f),
        lhs=left,
        rhs_engine=right,
        margin_engine=min(m_left, m_right),
    )
    rep.satisfied_engine = m_left >= -tol and m_right >= -tol
    rep.details.update(middle=middle, margin_left=m_left, margin_right=m_right)
    conv = check_generalized_convex(f, iv, alpha, grid_n=grid_n)
    rep.details["convexity"] = conv
    notes = [
        f"midpoint={left:.17g} mean={middle:.17g} endpoints={right:.17g}",
        f"margins=({m_left:.17g}, {m_right:.17g})",
    ]
    if not conv.passed:
        rep.status = "precondition_failed"
        w = conv.witness
        notes.append(f"not generalized convex: x1={w.x1:.17g} x2={w.x2:.17g} lambda={w.lam:.17g}")
    rep.note = "; ".join(notes)
    return rep


def _derivative_for_bounds(f: AlphaPoly, iv: Interval, alpha: float) -> AlphaPoly:
    df = deriv_alpha(f, alpha)
    coeffs = [c for _, c in df.terms()]
    uniform = all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)
    if uniform and iv.a >= 0:
        return df
    if len(coeffs) <= 1 and not (iv.a < 0 < iv.b):
        return df
    raise DomainError("|f^(alpha)| is not sign-constant on the interval (mixed-sign derivative)")


def _bound_setup(f, iv, alpha, p, q, what):
    alpha = check_alpha(alpha)
    check_conjugate(p, q)
    f = _require_poly(f, iv, what)
    df = _derivative_for_bounds(f, iv, alpha)
    fa_q = abs(evaluate(df, iv.a, alpha)) ** q
    fb_q = abs(evaluate(df, iv.b, alpha)) ** q
    return alpha, f, df, fa_q, fb_q


def _bound_verdict(rep: TheoremReport, tol: float) -> None:
    rep.margin_engine = rep.rhs_engine - rep.lhs
    rep.satisfied_engine = rep.lhs <= rep.rhs_engine + tol
    if rep.rhs_paper is not None:
        rep.satisfied_paper = rep.lhs <= rep.rhs_paper + tol


def _precondition(rep: TheoremReport, df: AlphaPoly, iv: Interval, alpha: float, q: float, grid_n: int) -> None:
    conv = check_generalized_convex(power_of_abs(df, q, alpha), iv, alpha, grid_n=grid_n)
    rep.details["convexity"] = conv
    if not conv.passed:
        rep.status = "precondition_failed"
        w = conv.witness
        rep.note = (
            f"|f^(alpha)|^q not generalized convex: x1={w.x1:.17g} x2={w.x2:.17g} lambda={w.lam:.17g}; "
            + rep.note
        ).rstrip("; ")


def _root(x: float, r: float) -> float | None:
    return x**r if x >= 0 else None


def thm3_check(
    f: GeneralizedFunction,
    iv: Interval,
    alpha: float,
    p: float,
    q: float,
    tol: float = BOUND_TOL,
    grid_n: int = 65,
) -> TheoremReport:
    """Trapezoid-type bound from the (1-2t)^α identity and Hölder."""
    alpha, f, df, fa_q, fb_q = _bound_setup(f, iv, alpha, p, q, "thm3")
    a, b = iv.a, iv.b
    lhs = abs((evaluate(f, a, alpha) + evaluate(f, b, alpha)) / 2.0**alpha - _mean_value(f, iv, alpha))
    e32, p32 = kernel_constant("eq32", alpha)
    e34, p34 = kernel_constant("eq34", alpha)
    scale = (b - a) ** alpha / 2.0**alpha * (fa_q + fb_q) ** (1.0 / q)
    rhs_engine = scale * e32 ** (1.0 / p) * e34 ** (1.0 / q)
    r34 = _root(p34, 1.0 / q)
    rhs_paper = None if r34 is None else scale * p32 ** (1.0 / p) * r34

    rep = TheoremReport(
        "thm3", alpha, (a, b), format_function(f), p=p, q=q, lhs=lhs, rhs_paper=rhs_paper, rhs_engine=rhs_engine
    )
    _bound_verdict(rep, tol)
    rep.details.update(eq32=(e32, p32), eq34=(e34, p34))
    notes = []
    if rhs_paper is None:
        notes.append(f"printed eq34 constant is negative ({p34:.17g})")
    elif not math.isclose(rhs_paper, rhs_engine, rel_tol=1e-12, abs_tol=1e-15):
        notes.append(
            f"printed constants differ from engine: eq32 engine/printed={e32 / p32:.17g}, "
            f"eq34 engine/printed={e34 / p34:.17g}"
        )
    rep.note = "; ".join(notes)
    _precondition(rep, df, iv, alpha, q, grid_n)
    return rep


def thm4_check(
    f: GeneralizedFunction,
    iv: Interval,
    alpha: float,
    p: float,
    q: float,
    tol: float = BOUND_TOL,
    grid_n: int = 65,
) -> TheoremReport:
    """Midpoint-type bound from the S-kernel identity and Hölder."""
    alpha, f, df, fa_q, fb_q = _bound_setup(f, iv, alpha, p, q, "thm4")
    a, b = iv.a, iv.b
    h = iv.length / 2.0
    lhs = abs(evaluate(f, iv.mid, alpha) - _mean_value(f, iv, alpha))

    e35, p35 = kernel_constant("eq35", alpha, iv)
    e_t2, _ = kernel_constant("eq36_t2", alpha)
    e_t1mt, _ = kernel_constant("eq36_t_1mt", alpha)
    # both halves: convexity at the midpoint plus the endpoint weight
    weighted_engine = h ** (2 * alpha) * (2.0 * (fa_q + fb_q) / 2.0**alpha * e_t2 + (fa_q + fb_q) * e_t1mt)
    rhs_engine = e35 ** (1.0 / p) * weighted_engine ** (1.0 / q) / (b - a) ** alpha

    g1 = gamma_ratio(1, 2, alpha)
    rhs_paper = (b - a) ** alpha / 4.0**alpha * (2.0**alpha * g1) ** (1.0 / p) * (g1 * (fa_q + fb_q)) ** (1.0 / q)

    rep = TheoremReport(
        "thm4", alpha, (a, b), format_function(f), p=p, q=q, lhs=lhs, rhs_paper=rhs_paper, rhs_engine=rhs_engine
    )
    _bound_verdict(rep, tol)
    weighted_printed = h ** (2 * alpha) * (fa_q + fb_q) * g1
    rep.details.update(eq35=(e35, p35), endpoint_weight=(weighted_engine, weighted_printed))
    notes = ["printed final '=' read as '<='"]
    if not math.isclose(rhs_paper, rhs_engine, rel_tol=1e-12, abs_tol=1e-15):
        notes.append(
            f"printed constants differ from engine: eq35 engine/printed={e35 / p35:.17g}, "
            f"endpoint weight engine/printed={weighted_engine / weighted_printed if weighted_printed else math.nan:.17g}"
        )
    rep.note = "; ".join(notes)
    _precondition(rep, df, iv, alpha, q, grid_n)
    return rep


def _single_base(term: PowTerm, what: str) -> tuple[float, LinForm, int]:
    if term.q != 0:
        raise ClassClosureError(f"{what} must be a single-base term")
    return term.coeff, term.first, term.p


def _integer_exponent(k: int, r: float, what: str) -> int:
    kr = k * r
    if abs(kr - round(kr)) > 1e-12:
        raise ClassClosureError(f"{what}: exponent {k}*{r} leaves the integer-multiple-of-alpha class")
    return int(round(kr))


def holder_check(
    f_term: PowTerm,
    g_term: PowTerm,
    iv: Interval,
    alpha: float,
    p: float,
    q: float,
    tol: float = BOUND_TOL,
) -> TheoremReport:
    """(1/Γ(1+α))∫|fg| ≤ (∫|f|^p)^(1/p) (∫|g|^q)^(1/q), all by the engine."""
    alpha = check_alpha(alpha)
    check_conjugate(p, q)
    a, b = iv.a, iv.b
    cf, xf, kf = _single_base(abs_term(f_term, a, b), "f")
    cg, xg, kg = _single_base(abs_term(g_term, a, b), "g")
    kfp = _integer_exponent(kf, p, "|f|^p")
    kgq = _integer_exponent(kg, q, "|g|^q")
    prod = integrate_two_form(PowTerm(cf * cg, xf, kf, xg, kg), a, b, alpha)
    i_f = integrate_two_form(PowTerm(cf**p, xf, kfp), a, b, alpha)
    i_g = integrate_two_form(PowTerm(cg**q, xg, kgq), a, b, alpha)
    rhs = i_f ** (1.0 / p) * i_g ** (1.0 / q)
    rep = TheoremReport(
        "holder",
        alpha,
        (a, b),
        f"{_term_label(f_term)} * {_term_label(g_term)}",
        p=p,
        q=q,
        lhs=prod,
        rhs_engine=rhs,
    )
    _bound_verdict(rep, tol)
    rep.details.update(int_f=i_f, int_g=i_g)
    return rep


def _term_label(t: PowTerm) -> str:
    def base(form: LinForm, k: int) -> str:
        return f"({form.slope:.17g}t{form.intercept:+.17g})^{k}a"

    s = format(t.coeff, ".17g")
    if t.p:
        s += "*" + base(t.first, t.p)
    if t.q:
        s += "*" + base(t.second, t.q)
    return s
