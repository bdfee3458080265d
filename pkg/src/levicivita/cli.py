"""``levicivita`` command line: eval, measure, integrate, delta and suite.

Results go to stdout (JSON by default), diagnostics to stderr.  Exit status is
0 on success, 1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .core import LCContext, LCNumber, PrecisionLoss, standard_part
from .distributions import InsufficientSmoothness, make_delta, pairing_row
from .expr import DomainError, ExprSyntaxError, eval_real, parse
from .extension import NotNearstandard, extension
from .integrate import (
    Aq,
    Bq,
    Extension,
    FinitePart,
    Full,
    NotEstablished,
    ScheduleExhausted,
    integrate,
    m_integral_limit,
)
from .lcexpr import LCExprError, evaluate, render_value
from .measure import MeasurableSet, OverlapError, csv_rows, m_measure, mL_measure, scale, shadow, translate
from .randgen import measurable_set
from .simple import IntervalLC
from .suites import SUITES, run_suite

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    depth: int = 16
    zeta: float = 1e-13
    tol: float = 1e-9
    mode: str = "float"
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.depth < 4:
            raise UsageError(f"--depth must be at least 4 (got {self.depth})")
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive (got {self.tol})")
        if self.zeta < 0:
            raise UsageError("--zeta must be non-negative")

    @property
    def ctx(self) -> LCContext:
        return LCContext(depth=self.depth, zeta=0 if self.mode == "exact" else self.zeta)


# ------------------------------------------------------------------ output
def _plain(v):
    """JSON-safe copy: infinities as strings, rationals exact, LC numbers as text."""
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, float) and math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, LCNumber):
        return str(v)
    return v


def _emit(obj, cfg: RunConfig, rows=None):
    """Print one result; ``rows`` (list of dicts) is used for CSV output."""
    if cfg.output == "json":
        print(json.dumps(_plain(obj), allow_nan=False))
    elif cfg.output == "csv":
        rows = rows if rows is not None else [obj]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _plain(v) for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
    else:
        for r in rows if rows is not None else [obj]:
            print("  ".join(f"{k}={_plain(v)}" for k, v in r.items() if not isinstance(v, (list, dict))))


# ------------------------------------------------------------------- eval
def cmd_eval(args, cfg: RunConfig) -> int:
    value = evaluate(args.expr, cfg.ctx)
    out = {"schema": 1, "expr": args.expr, "value": render_value(value)}
    if cfg.output == "text":
        print(render_value(value))
    else:
        _emit(out, cfg)
    return OK


# ---------------------------------------------------------------- measure
def _load_set(text: str, ctx: LCContext) -> MeasurableSet:
    if text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith(("[", "{")):
        try:
            with open(text) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read set description: {exc}") from None
    try:
        return MeasurableSet.from_json(json.loads(text), ctx)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"bad set description: {exc}") from None


def _measure_row(A: MeasurableSet) -> dict:
    row = {"m": str(m_measure(A)), "m_L": mL_measure(A)}
    try:
        sh = shadow(A)
        row["shadow"] = {
            "intervals": sh.intervals.to_json()["intervals"],
            "points": [str(p) for p in sh.points],
            "measure": sh.measure(),
        }
    except ValueError as exc:
        row["shadow"] = None
        row["shadow_note"] = str(exc)
    return row


def cmd_measure(args, cfg: RunConfig) -> int:
    ctx = cfg.ctx
    if args.random:
        rng = random.Random(cfg.seed)
        sets = [(str(i), measurable_set(rng, ctx)) for i in range(args.random)]
        bad = [sid for sid, A in sets if not _coherent(A, ctx)]
        if cfg.output == "csv":
            sys.stdout.write(csv_rows(sets))
        else:
            _emit({"schema": 1, "seed": cfg.seed, "sets": len(sets), "incoherent": bad}, cfg)
        if bad:
            print(f"coherence failed for sets {bad}", file=sys.stderr)
        return FAILED if bad else OK
    if args.set is None:
        raise UsageError("measure needs a set description or --random N")
    A = _load_set(args.set, ctx)
    if args.translate:
        A = translate(A, _lc_arg(args.translate, ctx))
    status = OK
    report = None
    if args.scale:
        x = _lc_arg(args.scale, ctx)
        A, report = scale(A, x)
        if report.get("asserted") and not report.get("holds"):
            status = FAILED
    out = {"schema": 1, "set": A.to_json(), **_measure_row(A)}
    if report is not None:
        out["scaling"] = report
    _emit(out, cfg, rows=[{k: v for k, v in out.items() if k not in ("set", "shadow")}])
    return status


def _coherent(A: MeasurableSet, ctx: LCContext) -> bool:
    st_m, mL = standard_part(m_measure(A)), mL_measure(A)
    return st_m == mL if ctx.exact else abs(st_m - mL) <= 1e-12


def _lc_arg(text: str, ctx: LCContext) -> LCNumber:
    v = evaluate(text, ctx)
    if not isinstance(v, LCNumber):
        v = ctx.const(v)
    return v


# -------------------------------------------------------------- integrate
def _endpoint(text: str, ctx: LCContext) -> LCNumber:
    text = text.strip()
    if text in ("inf", "+inf", "-inf"):
        raise UsageError("interval endpoints must be field elements; use d^-1 for an infinite bound")
    try:
        return _lc_arg(text, ctx)
    except LCExprError:
        pass
    try:
        value = eval_real(parse(text), 0.0)
    except (ExprSyntaxError, DomainError) as exc:
        raise UsageError(f"bad endpoint {text!r}: {exc}") from None
    return ctx.const(Fraction(value) if ctx.exact else value)


def _interval(text: str, ctx: LCContext) -> IntervalLC:
    body = text.strip()
    if not (body.startswith(("[", "(")) and body.endswith(("]", ")"))):
        raise UsageError(f"interval must look like [a,b]: {text!r}")
    parts = body[1:-1].split(",")
    if len(parts) != 2:
        raise UsageError(f"interval needs two endpoints: {text!r}")
    lo, hi = (_endpoint(p, ctx) for p in parts)
    return IntervalLC(lo, hi, body[0] == "[", body[-1] == "]")


def _integrand(args, ctx: LCContext):
    if (args.ext is None) == (args.power is None):
        raise UsageError("give exactly one of --ext EXPR or --power a=VALUE")
    if args.ext is not None:
        return Extension(extension(args.ext, args.order)), None
    key, _, value = args.power.partition("=")
    if key.strip() != "a" or not value:
        raise UsageError("--power expects a=VALUE")
    a = Fraction(value.strip())
    order = 0 if args.order is None else args.order
    # x^a lives on the positive axis; windows default to [1, d^-1]
    fn = extension(f"x^({a})", order, (0, math.inf))
    return Extension(fn), IntervalLC(ctx.one, ctx.monomial(1, -1))


def cmd_integrate(args, cfg: RunConfig) -> int:
    ctx = cfg.ctx
    f, default_window = _integrand(args, ctx)
    if args.limit is None:
        if args.interval is None:
            raise UsageError("integrate needs --interval or --limit")
        report = integrate(f, _interval(args.interval, ctx), cfg.tol)
    else:
        window = _interval(args.interval, ctx) if args.interval else default_window
        q = Fraction(args.q)
        region = {"Aq": lambda: Aq(q, window), "Bq": lambda: Bq(q, window),
                  "finite": lambda: FinitePart(window), "full": lambda: Full(window)}[args.limit]()
        report = m_integral_limit(f, region, cfg.tol)
    out = report.to_json()
    _emit(out, cfg, rows=[{k: v for k, v in out.items() if k != "trace"}])
    return OK


# ------------------------------------------------------------------ delta
def cmd_delta(args, cfg: RunConfig) -> int:
    ctx = cfg.ctx
    r = _lc_arg(args.r, ctx)
    h = _lc_arg(args.h, ctx) if args.h else None
    delta, _ = make_delta(r, h, args.k)
    rows = []
    for text in args.f:
        f = extension(text, args.order)
        rows.append(pairing_row(delta, args.m, f, text))
    bad = [row for row in rows if not row["residual"] <= cfg.tol]
    if cfg.output == "json":
        _emit({"schema": 1, "tolerance": cfg.tol, "rows": rows}, cfg)
    else:
        _emit(None, cfg, rows=rows)
    for row in bad:
        print(f"pairing residual {row['residual']:.3g} exceeds {cfg.tol} for {row['function']}",
              file=sys.stderr)
    return FAILED if bad else OK


# ------------------------------------------------------------------ suite
def cmd_suite(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.name == "all" else [args.name]
    results = []
    for name in names:
        res = run_suite(name, seed=cfg.seed)
        results.append(res)
        if cfg.output != "text":
            print(res.line(), file=sys.stderr)
    if cfg.output == "json":
        _emit({"schema": 1, "seed": cfg.seed, "passed": all(r.passed for r in results),
               "suites": [r.to_json() for r in results]}, cfg)
    elif cfg.output == "csv":
        _emit(None, cfg, rows=[{k: v for k, v in r.to_json().items() if k != "examples"} for r in results])
    else:
        for r in results:
            print(r.line())
    return OK if all(r.passed for r in results) else FAILED


# ----------------------------------------------------------------- parser
def _flags(parser, defaults: bool):
    # subcommands repeat the flags without defaults so they do not mask earlier values
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--depth", type=int, default=d(16), help="truncation depth (>= 4)")
    parser.add_argument("--zeta", type=float, default=d(1e-13), help="coefficient cutoff in float mode")
    parser.add_argument("--tol", type=float, default=d(1e-9), help="tolerance for real comparisons")
    parser.add_argument("--mode", choices=("float", "exact"), default=d("float"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--output", choices=("json", "csv", "text"), default=d("json"))
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _flags(argparse.ArgumentParser(add_help=False), defaults=False)

    p = argparse.ArgumentParser(prog="levicivita",
                                description="Levi-Civita field arithmetic, measure and integration.")
    _flags(p, defaults=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate an LC expression")
    s.add_argument("expr")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("measure", parents=[common], help="measure a finite union of intervals")
    s.add_argument("set", nargs="?", help="JSON list of [lo, hi] pairs or interval objects, a file, or -")
    s.add_argument("--scale", metavar="X", help="replace the set by X*A and check homogeneity")
    s.add_argument("--translate", metavar="X", help="replace the set by A + X")
    s.add_argument("--random", type=int, metavar="N", help="check coherence on N random sets")
    s.set_defaults(run=cmd_measure)

    s = sub.add_parser("integrate", parents=[common], help="M-integral of an extension or power")
    s.add_argument("--ext", metavar="EXPR", help="real expression in x")
    s.add_argument("--power", metavar="a=VALUE", help="x^a on the positive axis")
    s.add_argument("--order", type=int, default=None, help="extension order (default: infinite)")
    s.add_argument("--interval", metavar="[a,b]")
    s.add_argument("--limit", choices=("Aq", "Bq", "finite", "full"))
    s.add_argument("--q", default="0", help="valuation bound for Aq/Bq")
    s.set_defaults(run=cmd_integrate)

    s = sub.add_parser("delta", parents=[common], help="pair a Dirac-like bump with a function")
    s.add_argument("--f", action="append", required=True, metavar="EXPR", help="repeatable")
    s.add_argument("--r", default="0", help="center (LC expression)")
    s.add_argument("--h", default=None, help="half-width (default d)")
    s.add_argument("--k", type=int, default=None, help="smoothness (default max(m, 0))")
    s.add_argument("--m", type=int, default=0, help="derivative order")
    s.add_argument("--order", type=int, default=None, help="extension order (default: infinite)")
    s.set_defaults(run=cmd_delta)

    s = sub.add_parser("suite", parents=[common], help="run acceptance suites")
    s.add_argument("name", choices=["all", *SUITES])
    s.set_defaults(run=cmd_suite)
    return p


_USAGE_ERRORS = (UsageError, LCExprError, ExprSyntaxError, DomainError, NotNearstandard,
                 InsufficientSmoothness, OverlapError, ValueError, ZeroDivisionError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        cfg = RunConfig(args.depth, args.zeta, args.tol, args.mode, args.output, args.seed)
        if getattr(args, "k", 0) is None:
            args.k = max(args.m, 0)
        return args.run(args, cfg)
    except (NotEstablished, ScheduleExhausted, PrecisionLoss) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
