"""LC-valued integral of simple functions and the real-valued M-integral.

The M-integral is defined through sup/inf over integrable envelopes, which is
not computable in general.  ``m_integral`` only answers for integrands whose
value has a closed form (integrable simple functions, extensions of real
functions, step functions, delta pairings) and raises ``NotEstablished``
otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import LCContext, LCNumber, ext_add, is_finite, standard_part, valuation
from .distributions import DeltaSpec, pair_derivative
from .expr import diff
from .extension import ExtensionFn, extend
from .measure import MeasurableSet, RectangleND, mL_measure, rect_measure, shadow
from .quadrature import QuadratureError, quad
from .simple import (
    IntervalLC,
    PiecewiseFn,
    PowerSeriesFn,
    _intersect,
    ps_derivative,
    ps_eval,
    ps_integral,
    ps_mul,
)

__all__ = [
    "NotEstablished",
    "ScheduleExhausted",
    "PiecewiseSimple",
    "Extension",
    "DeltaProduct",
    "StepLC",
    "Locator",
    "Measurable",
    "Aq",
    "Bq",
    "FinitePart",
    "Full",
    "IntegralReport",
    "LimitReport",
    "integral_simple",
    "m_integral",
    "integrate",
    "m_integral_limit",
    "ftc_check",
    "integrate_by_parts",
    "epigraph_l_integral",
]

DEFAULT_TOL = 1e-9


class NotEstablished(ValueError):
    """M-integrability (or the value) is not licensed for this integrand and region."""


class ScheduleExhausted(RuntimeError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


# ----------------------------------------------------------------- integrands
@dataclass(frozen=True, eq=False)
class PiecewiseSimple:
    fn: PiecewiseFn


@dataclass(frozen=True, eq=False)
class Extension:
    fn: ExtensionFn


@dataclass(frozen=True, eq=False)
class DeltaProduct:
    delta: DeltaSpec
    fn: ExtensionFn
    m: int = 0


@dataclass(frozen=True, eq=False)
class StepLC:
    steps: tuple  # ((IntervalLC, LCNumber), ...)

    def __post_init__(self):
        steps = tuple(self.steps)
        MeasurableSet(tuple(iv for iv, _ in steps))  # disjointness check
        object.__setattr__(self, "steps", steps)


@dataclass(frozen=True)
class Locator:
    """0 on negatives and on the monad of 0, 1 on appreciable positives."""

    def __call__(self, x: LCNumber) -> LCNumber:
        ctx = x.ctx
        return ctx.one if (x > 0 and standard_part(x) > 0) else ctx.zero


MIntegrand = Union[PiecewiseSimple, Extension, DeltaProduct, StepLC, Locator]


# -------------------------------------------------------------------- regions
@dataclass(frozen=True, eq=False)
class Measurable:
    set: MeasurableSet


@dataclass(frozen=True, eq=False)
class Aq:
    """``{lambda(x) >= q}``, optionally intersected with ``window``."""

    q: Fraction
    window: Optional[IntervalLC] = None


@dataclass(frozen=True, eq=False)
class Bq:
    """``{lambda(x) > q}``, optionally intersected with ``window``."""

    q: Fraction
    window: Optional[IntervalLC] = None


@dataclass(frozen=True, eq=False)
class FinitePart:
    window: Optional[IntervalLC] = None


@dataclass(frozen=True, eq=False)
class Full:
    window: Optional[IntervalLC] = None


Region = Union[Measurable, Aq, Bq, FinitePart, Full]


def _as_region(A) -> Region:
    if isinstance(A, MeasurableSet):
        return Measurable(A)
    if isinstance(A, IntervalLC):
        return Measurable(MeasurableSet((A,)))
    return A


# -------------------------------------------------------------------- reports
def _json_value(v):
    if v is None:
        return None
    if isinstance(v, float) and math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    if v == math.inf:
        return "+inf"
    if v == -math.inf:
        return "-inf"
    return float(v)


@dataclass
class IntegralReport:
    value: object
    verdict: str
    route: str
    tolerance: float = DEFAULT_TOL
    warnings: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "value": _json_value(self.value),
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "route": self.route,
            "warnings": list(self.warnings),
        }
        if isinstance(self.value, Fraction):
            out["value_exact"] = str(self.value)
        if self.trace:
            out["trace"] = [[str(t), _json_value(v)] for t, v in self.trace]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


LimitReport = IntegralReport


# ----------------------------------------------------------- simple integral
def _meet(a: IntervalLC, b: IntervalLC) -> Optional[IntervalLC]:
    if a.disjoint(b):
        return None
    return _intersect(a, b)


def _sup_bound(fn: PowerSeriesFn, iv: IntervalLC) -> LCNumber:
    """``sum |a_n| R^n`` with ``R`` the largest distance from the center within ``iv``."""
    radius = max(abs(iv.lo - fn.center), abs(iv.hi - fn.center))
    if fn.generator is None:
        acc = fn.ctx.zero
        for a in reversed(fn.coeffs):
            acc = acc * radius + abs(a)
        return acc
    g = fn.generator
    absfn = PowerSeriesFn(IntervalLC(fn.center, fn.center + radius), fn.center,
                          generator=lambda n: abs(g(n)), max_terms=fn.max_terms)
    return ps_eval(absfn, fn.center + radius, closed=True)


def _pieces_on(f: PiecewiseFn, A: MeasurableSet):
    for iv in A.intervals:
        for piece, fn in f.pieces:
            sub = _meet(iv, piece)
            if sub is not None:
                yield sub, fn


def integral_simple(f: PiecewiseFn, A: MeasurableSet) -> LCNumber:
    """``sum`` over the pieces met by ``A`` of the power-series integral (``f = 0`` elsewhere)."""
    ctx = A.ctx if A.intervals else f.ctx
    total = ctx.zero
    for sub, fn in _pieces_on(f, A):
        total = total + ps_integral(fn, sub)
    if A.tail is not None and f.pieces:
        bound = max((_sup_bound(fn, piece) for piece, fn in f.pieces), key=lambda b: b)
        lam = valuation(bound)
        if lam == math.inf:
            return total
        exponent = A.tail.bound_exponent + lam
        if exponent <= 0:
            raise NotEstablished("f is too large on the tail for an infinitesimal remainder")
        total = total.with_prec(exponent)
    return total


# --------------------------------------------------------------- M-integral
def m_integral(f: MIntegrand, A, tol: float = DEFAULT_TOL):
    """Real-valued M-integral; raises ``NotEstablished`` outside the supported classes."""
    return integrate(f, A, tol).value


def integrate(f: MIntegrand, A, tol: float = DEFAULT_TOL) -> IntegralReport:
    region = _as_region(A)
    if isinstance(region, (Aq, Bq, FinitePart, Full)):
        report = m_integral_limit(f, region, tol=tol)
        if report.verdict == "oscillating":
            raise NotEstablished("window integrals oscillate; no limit")
        return report
    S = region.set
    if isinstance(f, PiecewiseSimple):
        return _route_simple(f.fn, S, tol)
    if isinstance(f, StepLC):
        return _route_step(f, S, tol)
    if isinstance(f, Extension):
        return _route_extension(f.fn, S, tol)
    if isinstance(f, DeltaProduct):
        return _route_delta(f, S, tol)
    if isinstance(f, Locator):
        return _route_locator(S, tol)
    raise NotEstablished(f"unsupported integrand {type(f).__name__}")


def _verdict(v) -> str:
    if v == math.inf:
        return "+inf"
    if v == -math.inf:
        return "-inf"
    return "finite"


def _route_simple(f: PiecewiseFn, S: MeasurableSet, tol) -> IntegralReport:
    for sub, fn in _pieces_on(f, S):
        if not is_finite(_sup_bound(fn, sub) * sub.length):
            raise NotEstablished(f"integrability of |f| on {sub} is not established")
    value = standard_part(integral_simple(f, S))
    return IntegralReport(value, _verdict(value), "L1 simple function: st of the LC integral", tol)


def _route_step(f: StepLC, S: MeasurableSet, tol) -> IntegralReport:
    ctx = f.steps[0][0].ctx if f.steps else S.ctx
    total = ctx.zero
    for iv, v in f.steps:
        for base in S.intervals:
            sub = _meet(iv, base)
            if sub is None:
                continue
            part = abs(v) * sub.length
            if not is_finite(part):
                raise NotEstablished(f"step {v} on {sub} is not integrable")
            total = total + v * sub.length
    value = standard_part(total)
    return IntegralReport(value, _verdict(value), "step function: st of the value-length sum", tol)


def _route_extension(f: ExtensionFn, S: MeasurableSet, tol) -> IntegralReport:
    if mL_measure(S) == math.inf:
        raise NotEstablished("extension integrand over a set of infinite measure")
    try:
        sh = shadow(S)
    except ValueError as exc:
        raise NotEstablished(str(exc)) from None
    a, b = f.domain
    warnings = []
    if S.tail is not None:
        warnings.append("tail ignored: infinitesimal total length, finite integrand")
    total = 0.0
    per = tol / max(1, len(sh.intervals.intervals))
    for iv in sh.intervals.intervals:
        if iv.lo < a or iv.hi > b:
            raise NotEstablished(f"shadow [{iv.lo}, {iv.hi}] leaves the domain [{a}, {b}]")
        try:
            total += quad(f.base, float(iv.lo), float(iv.hi), per)
        except QuadratureError as exc:
            raise NotEstablished(f"quadrature failed: {exc}") from None
    return IntegralReport(total, "finite", "lifting: real integral over the shadow", tol, warnings)


def _route_delta(f: DeltaProduct, S: MeasurableSet, tol) -> IntegralReport:
    support = f.delta.support.to_context(S.ctx) if S.intervals else f.delta.support
    if any(iv.covers(support) for iv in S.intervals):
        value = pair_derivative(f.delta, f.m, f.fn)
        return IntegralReport(value, "finite", "delta pairing: closed-form moments", tol)
    if all(iv.disjoint(support) for iv in S.intervals):
        return IntegralReport(0.0, "finite", "delta pairing: support outside the region", tol)
    raise NotEstablished("region cuts through the support of the bump")


def _route_locator(S: MeasurableSet, tol) -> IntegralReport:
    total = Fraction(0)
    for iv in S.intervals:
        lo, hi = standard_part(iv.lo), standard_part(iv.hi)
        total = ext_add(total, max(0, hi) - max(0, lo))
    return IntegralReport(total, _verdict(total), "locator: envelopes on appreciable positives", tol,
                          ["locator is not measurable; value from envelope bounds only"])


# ----------------------------------------------------- limits over A(q), B(q)
def _window_interval(ctx: LCContext, region, t) -> IntervalLC:
    if isinstance(region, (Aq, FinitePart)):
        q = region.q if isinstance(region, Aq) else Fraction(0)
        half = ctx.monomial(ctx.coerce(t), q)
    else:
        half = ctx.monomial(1, t)
    return IntervalLC(-half, half)


def _schedule(region, k: int):
    if isinstance(region, (Aq, FinitePart)):
        return 2**k
    if isinstance(region, Bq):
        return region.q + Fraction(1, 2**k)
    return -Fraction(2**k)


def _region_ctx(f, region) -> LCContext:
    if region.window is not None:
        return region.window.ctx
    if isinstance(f, PiecewiseSimple):
        return f.fn.ctx
    if isinstance(f, StepLC) and f.steps:
        return f.steps[0][0].ctx
    if isinstance(f, DeltaProduct):
        return f.delta.r.ctx
    from .core import EXACT

    return EXACT


class _ExtensionWindows:
    """Accumulates real integrals over growing shadows, one new slab at a time."""

    def __init__(self, fn: ExtensionFn, tol):
        self.fn = fn
        self.tol = tol
        self.lo = self.hi = None
        self.value = 0.0

    def _quad(self, a, b):
        lo, hi = self.fn.domain
        if a < lo or b > hi:
            raise NotEstablished(f"[{a}, {b}] leaves the domain [{lo}, {hi}]")
        return quad(self.fn.base, a, b, self.tol, rel=1e-13)

    def integral(self, a: float, b: float) -> float:
        if a >= b:
            return 0.0
        if self.lo is None or a > self.lo or b < self.hi:
            self.lo, self.hi = a, b
            self.value = self._quad(a, b)
            return self.value
        if a < self.lo:
            self.value += self._quad(a, self.lo)
        if b > self.hi:
            self.value += self._quad(self.hi, b)
        self.lo, self.hi = a, b
        return self.value


def _window_value(f, region, S: MeasurableSet, cache, tol):
    if isinstance(f, Extension):
        if not S.intervals:
            return 0.0
        iv = S.intervals[0]
        if not (is_finite(iv.lo) and is_finite(iv.hi)):
            raise NotEstablished("extension integrand on an infinite window")
        return cache.integral(float(standard_part(iv.lo)), float(standard_part(iv.hi)))
    return integrate(f, Measurable(S), tol).value


def m_integral_limit(f: MIntegrand, region, tol: float = DEFAULT_TOL, budget: int = 60,
                     cauchy: float = 1e-8, growth: float = 1e12, run: int = 8) -> IntegralReport:
    """Limit of window integrals for ``A(q)``, ``B(q)``, the finite part or the whole field.

    Converged when the last three values agree within ``cauchy``.  Diverges
    to ``+-inf`` when the values pass ``growth`` monotonically, or when the
    last ``run`` increments share a sign and none shrinks by more than 1%.
    """
    ctx = _region_ctx(f, region)
    cache = _ExtensionWindows(f.fn, tol) if isinstance(f, Extension) else None
    trace = []
    for k in range(budget):
        t = _schedule(region, k)
        window = _window_interval(ctx, region, t)
        if region.window is not None:
            window = _meet(window, region.window)
        S = MeasurableSet((window,)) if window is not None else MeasurableSet()
        v = _window_value(f, region, S, cache, tol)
        if v in (math.inf, -math.inf):
            return IntegralReport(v, _verdict(v), "window limit", tol, trace=trace + [(t, v)])
        trace.append((t, v))
        verdict = _limit_verdict([x for _, x in trace], cauchy, growth, run)
        if verdict is not None:
            value = trace[-1][1] if verdict == "finite" else (
                math.inf if verdict == "+inf" else -math.inf if verdict == "-inf" else None)
            return IntegralReport(value, verdict, "window limit", tol, trace=trace)
    raise ScheduleExhausted(f"no verdict after {budget} windows", trace)


def _limit_verdict(values, cauchy, growth, run):
    if len(values) >= 3:
        last = values[-3:]
        if max(last) - min(last) <= cauchy:
            return "finite"
    incs = [b - a for a, b in zip(values, values[1:])]
    if len(values) >= 3 and abs(values[-1]) > growth:
        tail = incs[-2:]
        if all(x > 0 for x in tail):
            return "+inf"
        if all(x < 0 for x in tail):
            return "-inf"
    if len(incs) >= run:
        recent = incs[-run:]
        steady = all(abs(b) >= 0.99 * abs(a) for a, b in zip(recent, recent[1:]))
        if steady and all(x > 0 for x in recent):
            return "+inf"
        if steady and all(x < 0 for x in recent):
            return "-inf"
        alternating = all(a * b < 0 for a, b in zip(recent, recent[1:]))
        if steady and alternating:
            return "oscillating"
    return None


# ------------------------------------------------------------------- FTC
def _evaluate(F, x: LCNumber) -> LCNumber:
    if isinstance(F, Extension):
        return extend(F.fn, x)
    if isinstance(F, PiecewiseSimple):
        for iv, fn in F.fn.pieces:
            if iv.contains(x, closure=True):
                return ps_eval(fn, x, closed=True)
        return x.ctx.zero
    if isinstance(F, Locator):
        return F(x)
    raise NotEstablished(f"cannot evaluate {type(F).__name__}")


def _derivative(F):
    if isinstance(F, Extension):
        fn = F.fn
        order = None if fn.order is None else max(fn.order - 1, 0)
        return Extension(ExtensionFn(diff(fn.base), order, fn.domain))
    if isinstance(F, PiecewiseSimple):
        return PiecewiseSimple(PiecewiseFn(tuple((iv, ps_derivative(fn)) for iv, fn in F.fn.pieces)))
    return None


def ftc_check(F: MIntegrand, interval: IntervalLC, tol: float = 1e-10) -> dict:
    """Compare ``st(F(b) - F(a))`` with the M-integral of ``F'``."""
    lhs = standard_part(_evaluate(F, interval.hi) - _evaluate(F, interval.lo))
    if isinstance(F, Locator):
        # F' = 0 wherever it exists, but F is not measurable
        rhs = 0
        measurable = False
    else:
        rhs = m_integral(_derivative(F), interval, tol)
        measurable = True
    consistent = abs(float(lhs) - float(rhs)) <= tol
    return {"lhs": lhs, "rhs": rhs, "consistent": consistent, "measurable": measurable,
            "tolerance": tol}


def _piece_on(f: PiecewiseFn, interval: IntervalLC) -> PowerSeriesFn:
    fn = f.piece_for(interval)
    if fn is None:
        for iv, cand in f.pieces:
            if iv.covers(interval, closure=True):
                return cand
        raise NotEstablished(f"no single piece covers {interval}")
    return fn


def integrate_by_parts(f: PiecewiseFn, g: PiecewiseFn, interval: IntervalLC,
                       tol: float = DEFAULT_TOL) -> dict:
    """``st(f g |_a^b)`` against ``int f'g + int f g'``."""
    p, q = _piece_on(f, interval), _piece_on(g, interval)
    a, b = interval.lo, interval.hi
    boundary = standard_part(
        ps_eval(p, b, closed=True) * ps_eval(q, b, closed=True)
        - ps_eval(p, a, closed=True) * ps_eval(q, a, closed=True)
    )
    left = PiecewiseFn(((interval, ps_mul(ps_derivative(p), q)),))
    right = PiecewiseFn(((interval, ps_mul(p, ps_derivative(q))),))
    total = m_integral(PiecewiseSimple(left), interval, tol) + m_integral(PiecewiseSimple(right), interval, tol)
    residual = abs(float(boundary) - float(total))
    return {"boundary": boundary, "sum": total, "residual": residual, "ok": residual <= tol}


# -------------------------------------------------------------- epigraph
def epigraph_l_integral(f: StepLC) -> dict:
    """Integral of a step function as the 2-D measure of its epigraph.

    Negative steps are split into ``f+`` and ``f-``; the report also carries
    the direct ``sum st(value) * st(length)`` and whether the routes agree.
    """
    base = MeasurableSet(tuple(iv for iv, _ in f.steps))
    if mL_measure(base) == math.inf:
        raise NotEstablished("epigraph route needs a base of finite measure")
    pos, neg = [], []
    direct = Fraction(0) if base.ctx.exact else 0.0
    for iv, v in f.steps:
        ctx = v.ctx
        if v > 0:
            pos.append(RectangleND((iv, IntervalLC(ctx.zero, v))))
        elif v < 0:
            neg.append(RectangleND((iv, IntervalLC(ctx.zero, -v))))
        sv, sl = standard_part(v), standard_part(iv.length)
        direct = ext_add(direct, 0 * sv if sl == 0 else sv * sl)
    value = ext_add(rect_measure(pos), -rect_measure(neg))
    return {"value": value, "direct": direct, "consistent": value == direct}
