"""Command-line front end: ``lfhh verify`` and ``lfhh sweep``.

Exit codes: 0 all checks satisfied, 1 a violation or errored record,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import sys
from dataclasses import dataclass, field

from .errors import LFError
from .functions import AlphaPoly, Interval, parse_function
from .means import prop1_check
from .special import check_alpha
from .symterm import PowTerm, T
from .verify import (
    IDENTITY_TOL,
    KERNEL_KINDS,
    TheoremReport,
    check_conjugate,
    holder_check,
    kernel_constant,
    thm1_residual,
    thm2_residual,
    thm3_check,
    thm4_check,
    thmD_check,
)
from .convexity import check_generalized_convex

THEOREMS = ("thm1", "thm2", "thm3", "thm4", "thmD", "holder", "prop1", "convexity", "constants")
NEEDS_FUNCTION = {"thm1", "thm2", "thm3", "thm4", "thmD", "holder", "convexity"}

FIELDS = (
    "theorem",
    "alpha",
    "interval",
    "function",
    "p",
    "q",
    "lhs",
    "rhs_paper",
    "rhs_engine",
    "residual",
    "satisfied_paper",
    "satisfied_engine",
    "margin_engine",
    "status",
    "note",
)


class ConfigError(Exception):
    pass


@dataclass
class SweepConfig:
    alphas: list[float] = field(default_factory=list)
    functions: list[str] = field(default_factory=list)
    intervals: list[tuple[float, float]] = field(default_factory=list)
    theorems: list[str] = field(default_factory=list)
    pq: list[tuple[float, float]] = field(default_factory=list)
    ns: list[int] = field(default_factory=list)
    out: str | None = None
    fmt: str = "json"
    tol: float = IDENTITY_TOL
    constants_out: str | None = None

    def validate(self) -> None:
        if not self.theorems:
            raise ConfigError("at least one theorem is required")
        for th in self.theorems:
            if th not in THEOREMS:
                raise ConfigError(f"unknown theorem {th!r}")
        if not self.alphas:
            raise ConfigError("at least one alpha is required")
        for a in self.alphas:
            try:
                check_alpha(a)
            except LFError as exc:
                raise ConfigError(str(exc)) from exc
        if not self.intervals:
            raise ConfigError("at least one interval is required")
        for a, b in self.intervals:
            if not a < b:
                raise ConfigError(f"bad interval [{a}, {b}]: need a < b")
        if NEEDS_FUNCTION & set(self.theorems) and not self.functions:
            raise ConfigError("at least one function is required")
        for lit in self.functions:
            try:
                parse_function(lit)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        for p, q in self.pq:
            try:
                check_conjugate(p, q)
            except LFError as exc:
                raise ConfigError(str(exc)) from exc
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if not self.tol > 0:
            raise ConfigError("tolerance must be positive")


# -- serialization ---------------------------------------------------------


def _num(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    return format(float(x), ".17g")


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _bool(x) -> str:
    return "null" if x is None else ("true" if x else "false")


def record_json(rep: TheoremReport) -> str:
    parts = []
    for name in FIELDS:
        v = getattr(rep, name)
        if name in ("theorem", "function", "status", "note"):
            s = _json_str(v)
        elif name == "interval":
            s = f"[{_num(v[0])},{_num(v[1])}]"
        elif name.startswith("satisfied"):
            s = _bool(v)
        else:
            s = _num(v)
        parts.append(f'"{name}":{s}')
    return "{" + ",".join(parts) + "}"


def _csv_cell(rep: TheoremReport, name: str) -> str:
    v = getattr(rep, name)
    if name in ("theorem", "function", "status", "note"):
        return v
    if name == "interval":
        return f"[{_num(v[0])},{_num(v[1])}]"
    if name.startswith("satisfied"):
        return "" if v is None else ("true" if v else "false")
    s = _num(v)
    return "" if s == "null" else s


def render(reports: list[TheoremReport], fmt: str) -> str:
    if fmt == "json":
        return "".join(record_json(r) + "\n" for r in reports)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in reports:
        w.writerow([_csv_cell(r, name) for name in FIELDS])
    return buf.getvalue()


def _sort_key(rep: TheoremReport):
    none = -math.inf
    return (
        rep.theorem,
        rep.alpha,
        rep.function,
        rep.interval,
        none if rep.p is None else rep.p,
        none if rep.q is None else rep.q,
    )


# -- execution --------------------------------------------------------------


def _error_report(theorem, alpha, iv, function, exc, p=None, q=None) -> TheoremReport:
    return TheoremReport(
        theorem, alpha, tuple(iv), function, p=p, q=q, status="error", note=f"{type(exc).__name__}: {exc}"
    )


def _monomial_term(lit: str) -> PowTerm:
    f = parse_function(lit)
    if not isinstance(f, AlphaPoly) or len(f.terms()) > 1:
        raise LFError(f"holder needs single-monomial poly literals, got {lit!r}")
    terms = f.terms() or [(0, 0.0)]
    k, c = terms[0]
    return PowTerm(c, T, k)


def _run_one(theorem: str, alpha: float, iv: Interval, lit: str | None, cfg: SweepConfig, extra) -> list[TheoremReport]:
    if theorem in ("thm1", "thm2"):
        fn = thm1_residual if theorem == "thm1" else thm2_residual
        rep = fn(parse_function(lit), iv, alpha, tol=cfg.tol)
        rep.function = lit
        return [rep]
    if theorem in ("thm3", "thm4"):
        p, q = extra
        fn = thm3_check if theorem == "thm3" else thm4_check
        rep = fn(parse_function(lit), iv, alpha, p, q)
        rep.function = lit
        return [rep]
    if theorem == "thmD":
        rep = thmD_check(parse_function(lit), iv, alpha)
        rep.function = lit
        return [rep]
    if theorem == "convexity":
        conv = check_generalized_convex(parse_function(lit), iv, alpha)
        rep = TheoremReport(
            "convexity",
            alpha,
            (iv.a, iv.b),
            lit,
            lhs=conv.max_excess,
            satisfied_engine=conv.passed,
            margin_engine=-conv.max_excess,
        )
        if conv.witness is not None:
            w = conv.witness
            rep.note = f"witness x1={w.x1:.17g} x2={w.x2:.17g} lambda={w.lam:.17g} lhs={w.lhs:.17g} rhs={w.rhs:.17g}"
        rep.note = (rep.note + "; " if rep.note else "") + f"samples={conv.samples_used}"
        return [rep]
    if theorem == "holder":
        (lf, lg), (p, q) = extra
        rep = holder_check(_monomial_term(lf), _monomial_term(lg), iv, alpha, p, q)
        rep.function = f"{lf} * {lg}"
        return [rep]
    if theorem == "prop1":
        n, (p, q) = extra
        return list(prop1_check(iv.a, iv.b, n, alpha, p, q))
    raise ConfigError(f"unknown theorem {theorem!r}")


def _constants_reports(alpha: float, intervals: list[tuple[float, float]]) -> list[TheoremReport]:
    out = []
    for kind in KERNEL_KINDS:
        ivs = intervals if kind == "eq35" else [(0.0, 1.0)]
        for a, b in ivs:
            engine, paper = kernel_constant(kind, alpha, Interval(a, b))
            ratio = engine / paper if paper else math.nan
            rep = TheoremReport(
                kind,
                alpha,
                (a, b),
                "-",
                lhs=engine,
                rhs_paper=paper,
                rhs_engine=engine,
                residual=engine - paper,
            )
            note = f"engine/printed ratio={ratio:.17g}"
            if kind in ("eq32", "eq35"):
                note += f"; 2^(1-alpha)={2.0 ** (1 - alpha):.17g}"
            if not math.isclose(engine, paper, rel_tol=1e-12, abs_tol=1e-15):
                note += "; printed constant differs from the by-parts value"
            rep.note = note
            out.append(rep)
    return out


def run_checks(cfg: SweepConfig) -> list[TheoremReport]:
    """Execute the Cartesian product of the configuration; sorted records."""
    pq = cfg.pq or [(2.0, 2.0)]
    ns = cfg.ns or [2]
    reports: list[TheoremReport] = []
    for theorem in cfg.theorems:
        for alpha in cfg.alphas:
            if theorem == "constants":
                reports.extend(_constants_reports(alpha, cfg.intervals))
                continue
            for a, b in cfg.intervals:
                iv = Interval(a, b)
                if theorem in ("thm1", "thm2", "thmD", "convexity"):
                    jobs = [(lit, None) for lit in cfg.functions]
                elif theorem in ("thm3", "thm4"):
                    jobs = [(lit, x) for lit in cfg.functions for x in pq]
                elif theorem == "holder":
                    pairs = itertools.combinations_with_replacement(cfg.functions, 2)
                    jobs = [(f"{f} * {g}", ((f, g), x)) for f, g in pairs for x in pq]
                else:  # prop1
                    jobs = [(None, (n, x)) for n in ns for x in pq]
                for lit, extra in jobs:
                    try:
                        reports.extend(_run_one(theorem, alpha, iv, lit, cfg, extra))
                    except (LFError, ValueError, ArithmeticError) as exc:
                        p = q = None
                        if theorem in ("thm3", "thm4"):
                            p, q = extra
                        elif theorem in ("holder", "prop1"):
                            p, q = extra[1]
                        label = lit if lit is not None else f"x^({extra[0]}alpha)"
                        reports.append(_error_report(theorem, alpha, (a, b), label, exc, p, q))
    reports.sort(key=_sort_key)
    return reports


def exit_code(reports: list[TheoremReport]) -> int:
    bad = any(r.status == "error" or r.violated for r in reports)
    return 1 if bad else 0


def summary(reports: list[TheoremReport]) -> str:
    rows = {}
    for r in reports:
        row = rows.setdefault(r.theorem, [0, 0, 0, 0])
        if r.status == "error":
            row[3] += 1
        elif r.status == "precondition_failed":
            row[2] += 1
        elif r.violated:
            row[1] += 1
        else:
            row[0] += 1
    lines = [f"{'theorem':<12}{'ok':>8}{'violated':>10}{'precond':>9}{'error':>7}"]
    for th in sorted(rows):
        ok, vi, pf, er = rows[th]
        lines.append(f"{th:<12}{ok:>8}{vi:>10}{pf:>9}{er:>7}")
    tot = [sum(r[i] for r in rows.values()) for i in range(4)]
    lines.append(f"{'total':<12}{tot[0]:>8}{tot[1]:>10}{tot[2]:>9}{tot[3]:>7}")
    return "\n".join(lines)


def constants_table(cfg: SweepConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("alpha", "kind", "a", "b", "engine", "printed", "ratio"))
    for alpha in cfg.alphas:
        for rep in _constants_reports(alpha, cfg.intervals):
            ratio = rep.rhs_engine / rep.rhs_paper if rep.rhs_paper else math.nan
            w.writerow(
                (
                    _num(alpha),
                    rep.theorem,
                    _num(rep.interval[0]),
                    _num(rep.interval[1]),
                    _num(rep.rhs_engine),
                    _num(rep.rhs_paper),
                    _num(ratio),
                )
            )
    return buf.getvalue()


# -- configuration ------------------------------------------------------------


CONFIG_KEYS = {"theorem", "alpha", "function", "interval", "p", "q", "pq", "n", "out", "format", "tol", "constants_out"}


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number in {what}: {text!r}") from exc


def _pair(text: str, what: str) -> tuple[float, float]:
    vals = text.replace(",", " ").split()
    if len(vals) != 2:
        raise ConfigError(f"{what} needs two numbers, got {text!r}")
    try:
        return float(vals[0]), float(vals[1])
    except ValueError as exc:
        raise ConfigError(f"bad number in {what}: {text!r}") from exc


def parse_config_text(text: str) -> dict:
    """Flat ``key=value`` lines.

    Lists are comma separated; function and interval entries may also be
    repeated or separated by ``;`` since a function literal contains commas.
    """
    raw: dict[str, list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"config line {lineno}: cannot parse {line!r}")
        raw.setdefault(key, []).append(value)

    out: dict = {}
    for key, values in raw.items():
        if key == "function":
            out["functions"] = [s.strip() for v in values for s in v.split(";") if s.strip()]
        elif key == "interval":
            out["intervals"] = [_pair(s, "interval") for v in values for s in v.split(";") if s.strip()]
        elif key == "pq":
            out["pq"] = [_pair(s, "pq") for v in values for s in v.split(";") if s.strip()]
        elif key == "alpha":
            out["alphas"] = [x for v in values for x in _floats(v, "alpha")]
        elif key == "p":
            out["p"] = [x for v in values for x in _floats(v, "p")]
        elif key == "q":
            out["q"] = [x for v in values for x in _floats(v, "q")]
        elif key == "n":
            try:
                out["ns"] = [int(x) for v in values for x in v.split(",") if x.strip()]
            except ValueError as exc:
                raise ConfigError(f"bad integer in n: {values!r}") from exc
        elif key == "theorem":
            out["theorems"] = [t.strip() for v in values for t in v.split(",") if t.strip()]
        elif key == "tol":
            out["tol"] = _floats(values[-1], "tol")[0]
        elif key == "format":
            out["fmt"] = values[-1]
        else:
            out[key] = values[-1]
    return out


def _zip_pq(ps, qs) -> list[tuple[float, float]]:
    if len(ps) != len(qs):
        raise ConfigError("--p and --q must be given the same number of times")
    return list(zip(ps, qs))


def build_config(args: argparse.Namespace) -> SweepConfig:
    base: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                base = parse_config_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    if "p" in base or "q" in base:
        base.setdefault("pq", []).extend(_zip_pq(base.pop("p", []), base.pop("q", [])))

    cfg = SweepConfig(**{k: v for k, v in base.items() if k in SweepConfig.__dataclass_fields__})
    # flags win over the config file
    if args.theorem:
        cfg.theorems = list(args.theorem)
    if args.alpha:
        cfg.alphas = list(args.alpha)
    if args.function:
        cfg.functions = list(args.function)
    if args.interval:
        cfg.intervals = [tuple(iv) for iv in args.interval]
    if args.p or args.q:
        cfg.pq = _zip_pq(args.p or [], args.q or [])
    if args.n:
        cfg.ns = list(args.n)
    if args.out:
        cfg.out = args.out
    if args.format:
        cfg.fmt = args.format
    if args.tol is not None:
        cfg.tol = args.tol
    if getattr(args, "constants_out", None):
        cfg.constants_out = args.constants_out
    cfg.validate()
    return cfg


def _add_common(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--theorem", action="append", choices=THEOREMS)
    ap.add_argument("--alpha", action="append", type=float)
    ap.add_argument("--function", action="append", metavar="LITERAL", help="poly:c0,c1,... or ml:s")
    ap.add_argument("--interval", action="append", nargs=2, type=float, metavar=("A", "B"))
    ap.add_argument("--p", action="append", type=float)
    ap.add_argument("--q", action="append", type=float)
    ap.add_argument("--n", action="append", type=int)
    ap.add_argument("--out", metavar="PATH")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--tol", type=float, help="identity residual tolerance")
    ap.add_argument("--config", metavar="PATH")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lfhh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run checks and print every record")
    _add_common(v)
    s = sub.add_parser("sweep", help="run a parameter grid and emit records")
    _add_common(s)
    s.add_argument("--constants-out", metavar="PATH", help="per-alpha kernel constant table (CSV)")
    return ap


def _emit(cfg: SweepConfig, text: str, stream) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _describe(rep: TheoremReport) -> str:
    verdict = {True: "satisfied", False: "VIOLATED", None: "-"}[rep.satisfied_engine]
    if rep.status != "ok":
        verdict = rep.status
    parts = [
        f"{rep.theorem} alpha={_num(rep.alpha)} [{_num(rep.interval[0])},{_num(rep.interval[1])}] {rep.function}",
    ]
    if rep.p is not None:
        parts.append(f"p={_num(rep.p)} q={_num(rep.q)}")
    parts.append(f"lhs={_num(rep.lhs)} rhs_engine={_num(rep.rhs_engine)} rhs_paper={_num(rep.rhs_paper)}")
    if rep.residual is not None:
        parts.append(f"residual={_num(rep.residual)}")
    parts.append(verdict)
    line = "  ".join(parts)
    if rep.note:
        line += f"\n    note: {rep.note}"
    return line


def run_verify(cfg: SweepConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    reports = run_checks(cfg)
    for rep in reports:
        stdout.write(_describe(rep) + "\n")
    if cfg.out:
        _emit(cfg, render(reports, cfg.fmt), stdout)
    stdout.write(summary(reports) + "\n")
    return exit_code(reports)


def run_sweep(cfg: SweepConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    reports = run_checks(cfg)
    _emit(cfg, render(reports, cfg.fmt), stdout)
    table = constants_table(cfg)
    target = cfg.constants_out or (cfg.out + ".constants.csv" if cfg.out else None)
    if target:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(table)
    stderr.write(summary(reports) + "\n")
    return exit_code(reports)


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"lfhh: configuration error: {exc}\n")
        return 2
    if args.command == "verify":
        return run_verify(cfg)
    return run_sweep(cfg)


if __name__ == "__main__":
    sys.exit(main())
