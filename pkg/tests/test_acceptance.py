"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line.

Run ``python tests/test_acceptance.py`` to print the lines without pytest.
"""

import contextlib
import io
import itertools
import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from lfhh import cli  # noqa: E402
from lfhh.convexity import check_generalized_convex  # noqa: E402
from lfhh.functions import (  # noqa: E402
    AlphaPoly,
    Interval,
    MittagLefflerExp,
    deriv_alpha,
    evaluate,
    lf_integral,
    monomial,
)
from lfhh.means import prop1_check  # noqa: E402
from lfhh.special import gamma, gamma_ratio, mittag_leffler  # noqa: E402
from lfhh.symterm import LinForm, PowTerm, antiderivative_single, integrate_two_form, term_alpha_derivative  # noqa: E402
from lfhh.verify import kernel_constant, thm1_residual, thm2_residual, thm3_check, thm4_check, thmD_check  # noqa: E402

ALPHAS = (0.3, 0.5, 0.7, 0.9, 1.0)
INTERVALS = (Interval(0, 1), Interval(1, 3), Interval(0.5, 2))
PQ = ((2.0, 2.0), (3.0, 1.5), (4.0, 4.0 / 3.0))
SEED = 20261018
N_POLYS = 80


class Outcome:
    def __init__(self, passed: bool, detail: str):
        self.passed = passed
        self.detail = detail


def _fmt_failures(fails, limit=3):
    shown = "; ".join(fails[:limit])
    return shown + (f"; ... {len(fails) - limit} more" if len(fails) > limit else "")


def _rel_ok(x, y, tol):
    return abs(x - y) <= tol * max(1.0, abs(y))


def identity_polys():
    """Seeded sample of degree ≤ 6 α-polynomials with coefficients in {0..3}."""
    rng = np.random.default_rng(SEED)
    seen, out = set(), []
    # always include the monomials and the zero-constant / constant corners
    for k in range(7):
        seen.add(tuple([0] * k + [1]))
    seen.add((3,))
    while len(seen) < N_POLYS:
        deg = int(rng.integers(0, 7))
        seen.add(tuple(int(c) for c in rng.integers(0, 4, deg + 1)))
    for c in sorted(seen):
        out.append(AlphaPoly(tuple(float(x) for x in c)))
    return out


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    fails, count = [], 0
    for k, iv in itertools.product((2, 3, 4), (Interval(1, 3), Interval(0, 1))):
        f = monomial(k)
        for rep in (thm1_residual(f, iv, 1.0), thm2_residual(f, iv, 1.0)):
            count += 1
            if not abs(rep.residual) <= 1e-10:
                fails.append(f"{rep.theorem} x^{k} {tuple(iv)} residual={rep.residual:.3g}")
        a, b = iv
        ref = oracles.classical_hh_bound(k * a ** (k - 1), k * b ** (k - 1), a, b, 2.0)
        for check in (thm3_check, thm4_check):
            rep = check(f, iv, 1.0, 2.0, 2.0)
            count += 1
            if not (abs(rep.rhs_engine - ref) <= 1e-10 and rep.satisfied_engine):
                fails.append(f"{rep.theorem} x^{k} {tuple(iv)} rhs={rep.rhs_engine!r} classical={ref!r}")
    return Outcome(not fails, f"{count} checks" + (f"; {_fmt_failures(fails)}" if fails else ""))


def criterion_2():
    rng = np.random.default_rng(SEED + 2)
    worst, fails = 0.0, []
    for _ in range(200):
        s = rng.uniform(0.2, 3.0, 2) * rng.choice([-1, 1], 2)
        roots = rng.uniform(0.55, 2.5, 2) * rng.choice([-1, 1], 2) + 0.5
        x = LinForm(s[0], -s[0] * roots[0])
        y = LinForm(s[1], -s[1] * roots[1])
        p, q = (int(v) for v in rng.integers(0, 6, 2))
        c = float(rng.uniform(-3, 3))
        got = integrate_two_form(PowTerm(c, x, p, y, q), 0.0, 1.0, 1.0)
        ref = oracles.quad_two_form(c, (x.slope, x.intercept), p, (y.slope, y.intercept), q, 0.0, 1.0)
        err = abs(got - ref) / max(1.0, abs(ref))
        worst = max(worst, err)
        if err > 1e-10:
            fails.append(f"term c={c:.3g} p={p} q={q} err={err:.3g}")
    consts = {"eq32": 0.5, "eq34": 0.25}
    for kind, ref in consts.items():
        e, _ = kernel_constant(kind, 1.0)
        if abs(e - ref) > 1e-12:
            fails.append(f"{kind}={e!r}")
    for iv in INTERVALS:
        e, _ = kernel_constant("eq35", 1.0, iv)
        if abs(e - iv.length**2 / 4) > 1e-12:
            fails.append(f"eq35{tuple(iv)}={e!r}")
    return Outcome(not fails, f"200 random terms vs quad, worst rel err {worst:.2g}" + (f"; {_fmt_failures(fails)}" if fails else ""))


def criterion_3():
    fails, count = [], 0
    by_alpha = {}
    for f, alpha, iv in itertools.product(identity_polys(), ALPHAS, INTERVALS):
        for check in (thm1_residual, thm2_residual):
            rep = check(f, iv, alpha)
            count += 1
            if not abs(rep.residual) <= 1e-9 * max(1.0, abs(rep.lhs)):
                by_alpha[alpha] = by_alpha.get(alpha, 0) + 1
                fails.append(f"{rep.theorem} alpha={alpha} {rep.function} {tuple(iv)} residual={rep.residual:.3g}")
    breakdown = ", ".join(f"alpha={a}: {by_alpha.get(a, 0)}" for a in ALPHAS)
    detail = f"{count} cases, {len(fails)} over 1e-9"
    if fails:
        detail += f" ({breakdown}); e.g. {_fmt_failures(fails, 2)}"
    return Outcome(not fails, detail)


def criterion_4():
    rng = np.random.default_rng(SEED + 4)
    randoms = [AlphaPoly(tuple(float(c) for c in rng.integers(0, 4, int(rng.integers(2, 6))))) for _ in range(10)]
    cases = []
    for alpha in ALPHAS:
        cases.append((monomial(2), Interval(0, 1), alpha))
        cases.append((monomial(3), Interval(0, 2), alpha))
        cases.extend((f, Interval(0, 2), alpha) for f in randoms)
    cases.append((MittagLefflerExp(1.0), Interval(0, 1), 1.0))
    fails, skipped = [], 0
    for f, iv, alpha in cases:
        rep = thmD_check(f, iv, alpha)
        if rep.status == "precondition_failed":
            skipped += 1
            continue
        if rep.margin_engine < -1e-12:
            fails.append(f"alpha={alpha} {rep.function} {tuple(iv)} margin={rep.margin_engine:.4g}")
    detail = f"{len(cases)} cases ({skipped} not generalized convex), {len(fails)} with margin < -1e-12"
    if fails:
        detail += f"; e.g. {_fmt_failures(fails, 2)}"
    return Outcome(not fails, detail)


def criterion_5():
    fails, count, skipped, missing, paper_mismatch, with_c0 = [], 0, 0, 0, [], 0
    for f, alpha, iv in itertools.product(identity_polys(), ALPHAS, INTERVALS):
        for (p, q), check in itertools.product(PQ, (thm3_check, thm4_check)):
            rep = check(f, iv, alpha, p, q)
            if rep.status != "ok":
                skipped += 1
                continue
            count += 1
            if rep.rhs_paper is None:
                missing += 1
            if not rep.satisfied_engine:
                with_c0 += f.coeffs[0] != 0
                fails.append(f"{rep.theorem} alpha={alpha} {rep.function} {tuple(iv)} p={p:g} margin={rep.margin_engine:.3g}")
            if alpha == 1.0 and not _rel_ok(rep.rhs_paper, rep.rhs_engine, 1e-12):
                paper_mismatch.append(f"{rep.theorem} {rep.function} {tuple(iv)} p={p:g}")
    detail = (
        f"{count} convex records ({skipped} skipped), {len(fails)} over rhs_engine "
        f"({with_c0} with nonzero constant term), {missing} without printed constant, "
        f"{len(paper_mismatch)} printed/engine mismatches at alpha=1"
    )
    if fails:
        detail += f"; e.g. {_fmt_failures(fails, 2)}"
    return Outcome(not fails and not missing and not paper_mismatch, detail)


def criterion_6():
    cfg = cli.SweepConfig(alphas=[0.5], intervals=[(0.0, 1.0)], theorems=["constants"])
    cfg.validate()
    (rec,) = [r for r in cli.run_checks(cfg) if r.theorem == "eq32"]
    ratio = rec.rhs_engine / rec.rhs_paper
    ok = abs(ratio - math.sqrt(2)) <= 1e-10 and rec.status == "ok" and "ratio" in rec.note
    return Outcome(ok, f"eq32 engine/printed={ratio:.15g}, status={rec.status}, note='{rec.note}'")


def criterion_7():
    fails, count = [], 0
    for (a, b), n, alpha in itertools.product(((1, 2), (1, 3), (2, 5)), (2, 3, 4), ALPHAS):
        for rep in prop1_check(a, b, n, alpha, 2.0, 2.0):
            count += 1
            if not (rep.status == "ok" and rep.satisfied_engine):
                fails.append(f"{rep.theorem} alpha={alpha} ({a},{b}) n={n} lhs={rep.lhs:.4g} rhs={rep.rhs_engine:.4g}")
    trap, mid = prop1_check(1, 2, 2, 1.0, 2.0, 2.0)
    exact = abs(trap.lhs - 1 / 6) <= 1e-12 and abs(mid.lhs - 1 / 12) <= 1e-12
    if not exact:
        fails.append(f"alpha=1 LHS values {trap.lhs!r}, {mid.lhs!r}")
    detail = f"{count} records, {len(fails)} failing; alpha=1 LHS 1/6, 1/12 {'exact' if exact else 'WRONG'}"
    if fails:
        detail += f"; e.g. {_fmt_failures(fails, 2)}"
    return Outcome(not fails, detail)


def _brute_first_witness(f, iv, alpha, n, tol=1e-9):
    xs = [iv.a + iv.length * i / (n - 1) for i in range(n)]
    for x1, x2 in itertools.product(xs, xs):
        for m in range(1, n):
            lam = m / n
            lhs = evaluate(f, lam * x1 + (1 - lam) * x2, alpha)
            rhs = lam**alpha * evaluate(f, x1, alpha) + (1 - lam) ** alpha * evaluate(f, x2, alpha)
            if lhs - rhs > tol:
                return (x1, x2, lam)
    return None


def criterion_8():
    fails = []
    for alpha in ALPHAS:
        if not check_generalized_convex(monomial(2), Interval(0, 2), alpha, grid_n=33).passed:
            fails.append(f"x^(2a) alpha={alpha}")
        if not check_generalized_convex(MittagLefflerExp(1.0), Interval(0, 1), alpha, grid_n=33).passed:
            fails.append(f"E_a alpha={alpha}")
    f = AlphaPoly((0.0, 1.0, -1.0))
    rep = check_generalized_convex(f, Interval(0, 1), 1.0, grid_n=33)
    bf = _brute_first_witness(f, Interval(0, 1), 1.0, 33)
    w = rep.witness
    if rep.passed or bf is None or not np.allclose((w.x1, w.x2, w.lam), bf, atol=1e-15):
        fails.append(f"witness {w} vs brute force {bf}")
    rng = np.random.default_rng(SEED + 8)
    flips = 0
    for _ in range(50):
        g = AlphaPoly(tuple(rng.uniform(-2, 2, int(rng.integers(1, 5)))))
        alpha = float(rng.choice(ALPHAS))
        c = float(rng.uniform(0.2, 5.0))
        # the sampling tolerance is absolute, in units of f, so it scales with f
        r1 = check_generalized_convex(g, Interval(0, 1), alpha, grid_n=17, tol=1e-9)
        r2 = check_generalized_convex(g.scaled(c), Interval(0, 1), alpha, grid_n=17, tol=1e-9 * c)
        if r1.passed != r2.passed:
            flips += 1
    if flips:
        fails.append(f"scaling changed {flips}/50 verdicts")
    detail = f"witness ({w.x1:g}, {w.x2:g}, {w.lam:.6g}) lexicographically first; 50 scaling cases"
    return Outcome(not fails, detail + (f"; {_fmt_failures(fails)}" if fails else ""))


def criterion_9():
    rng = np.random.default_rng(SEED + 9)
    n_assert, fails = 0, []

    def check(ok, what):
        nonlocal n_assert
        n_assert += 1
        if not ok:
            fails.append(what)

    for _ in range(110):
        alpha = float(rng.uniform(0.05, 1.0))
        f = AlphaPoly(tuple(rng.uniform(-3, 3, int(rng.integers(1, 8)))))
        g = AlphaPoly(tuple(rng.uniform(-3, 3, len(f.coeffs))))
        a, c, b = (float(v) for v in np.sort(rng.uniform(0, 4, 3)))
        u, v = (float(w) for w in rng.uniform(-2, 2, 2))
        iab = lf_integral(f, a, b, alpha)
        # fundamental theorem both ways
        ftc = lf_integral(deriv_alpha(f, alpha), a, b, alpha)
        check(_rel_ok(ftc, evaluate(f, b, alpha) - evaluate(f, a, alpha), 1e-11), f"FTC alpha={alpha}")
        k = int(rng.integers(0, 10))
        base = LinForm(float(rng.uniform(0.2, 3)), float(rng.uniform(0.1, 2)))
        (d,) = term_alpha_derivative(antiderivative_single(base, k, 1.0, alpha), alpha)
        check(_rel_ok(d.coeff, 1.0, 1e-11) and d.p == k, f"D(primitive) alpha={alpha} k={k}")
        # linearity
        h = AlphaPoly(tuple(u * x + v * y for x, y in zip(f.coeffs, g.coeffs)))
        check(_rel_ok(lf_integral(h, a, b, alpha), u * iab + v * lf_integral(g, a, b, alpha), 1e-11), "linearity")
        # interval additivity and orientation
        check(_rel_ok(lf_integral(f, a, c, alpha) + lf_integral(f, c, b, alpha), iab, 1e-11), "additivity")
        check(lf_integral(f, b, a, alpha) == -iab, "orientation")
        # Mittag-Leffler reproduces itself
        s = float(rng.uniform(0.1, 2.0))
        x = float(rng.uniform(0.0, 2.0))
        ml = MittagLefflerExp(s)
        check(_rel_ok(evaluate(deriv_alpha(ml, alpha), x, alpha), s**alpha * evaluate(ml, x, alpha), 1e-11), "ML derivative")
        check(_rel_ok(s**alpha * lf_integral(ml, 0.0, x, alpha), evaluate(ml, x, alpha) - 1.0, 1e-11), "ML integral")
    detail = f"{n_assert} assertions, {len(fails)} failed"
    return Outcome(not fails and n_assert >= 500, detail + (f"; {_fmt_failures(fails)}" if fails else ""))


def criterion_10():
    fails = []
    for x, ref in ((2.0, 1.0), (3.0, 2.0), (1.5, math.sqrt(math.pi) / 2)):
        if abs(gamma(x) - ref) > 1e-14:
            fails.append(f"gamma({x})={gamma(x)!r}")
    for (j, k, alpha), ref in (((1, 2, 1.0), 0.5), ((5, 5, 0.37), 1.0), ((1, 2, 0.5), math.sqrt(math.pi) / 2)):
        if abs(gamma_ratio(j, k, alpha) - ref) > 1e-14:
            fails.append(f"gamma_ratio({j},{k},{alpha})")
    e = mittag_leffler(0.5, 1.0)
    ref = float(oracles.ml_half(1.0))
    if abs(e - ref) > 1e-5:
        fails.append(f"E_1/2(1)={e!r} oracle={ref!r}")
    worst = 0.0
    for alpha in ALPHAS:
        for i, j, k in itertools.product(range(0, 25, 3), repeat=3):
            chained = gamma_ratio(i, j, alpha) * gamma_ratio(j, k, alpha)
            worst = max(worst, abs(chained - gamma_ratio(i, k, alpha)) / gamma_ratio(i, k, alpha))
    if worst > 1e-12:
        fails.append(f"chain identity rel err {worst:.3g}")
    return Outcome(not fails, f"E_1/2(1) err {abs(e - ref):.2g}; chain worst rel err {worst:.2g}" + (f"; {_fmt_failures(fails)}" if fails else ""))


def criterion_11(tmp_dir: Path):
    cfg = tmp_dir / "sweep.cfg"
    cfg.write_text(
        "theorem = thm1, thm2, thm3, thm4, thmD, constants, prop1\n"
        "alpha = 0.5, 1.0\n"
        "function = poly:0,0,1; poly:1,2,3; ml:1\n"
        "interval = 1 2; 0.5 3\n"
        "p = 2, 3\n"
        "q = 2, 1.5\n"
    )
    outs = []
    with contextlib.redirect_stderr(io.StringIO()):
        for i in range(2):
            out = tmp_dir / f"run{i}.json"
            cli.main(["sweep", "--config", str(cfg), "--out", str(out)])
            outs.append(out.read_bytes())
        same = outs[0] == outs[1] and len(outs[0]) > 0

        def sweep(theorem, function, a, b, alpha):
            out = str(tmp_dir / "codes.json")
            return cli.main(["sweep", "--theorem", theorem, "--function", function, "--interval", a, b, "--alpha", alpha, "--out", out])

        codes = (
            sweep("thm1", "poly:0,0,1", "1", "2", "1.0"),
            sweep("thm2", "poly:0,1", "1", "2", "0.7"),
            sweep("thm1", "poly:0,0,1", "2", "1", "1.0"),
        )
    ok = same and codes == (0, 1, 2)
    return Outcome(ok, f"byte-identical={same} ({len(outs[0])} bytes); exit codes {codes} (expected (0, 1, 2))")


TITLES = {
    1: "alpha=1 classical regression",
    2: "kernel-constant oracle agreement",
    3: "identity suite",
    4: "thmD double inequality",
    5: "bound suites",
    6: "discrepancy surfacing",
    7: "special-means inequalities",
    8: "convexity checker",
    9: "calculus invariants",
    10: "special functions",
    11: "CLI determinism and exit codes",
}


def run_criterion(num: int, tmp_dir: Path) -> Outcome:
    fn = globals()[f"criterion_{num}"]
    return fn(tmp_dir) if num == 11 else fn()


def line(num: int, outcome: Outcome) -> str:
    return f"[{'PASS' if outcome.passed else 'FAIL'}] criterion {num:2d} ({TITLES[num]}): {outcome.detail}"


@pytest.mark.parametrize("num", sorted(TITLES))
def test_criterion(num, tmp_path, acceptance_log):
    outcome = run_criterion(num, tmp_path)
    acceptance_log[num] = line(num, outcome)
    assert outcome.passed, outcome.detail


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [run_criterion(n, Path(d)) for n in sorted(TITLES)]
    for n, res in zip(sorted(TITLES), results):
        print(line(n, res))
    sys.exit(0 if all(r.passed for r in results) else 1)
