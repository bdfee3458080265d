"""Intervals of the Levi-Civita field and simple (power-series) functions on them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import FLOAT, LCContext, LCNumber, PrecisionLoss, standard_part
from .expr import Expr, parse
from .taylor import polynomial_degree, taylor_coefficients

__all__ = [
    "IntervalLC",
    "PowerSeriesFn",
    "PiecewiseFn",
    "SeriesNotStable",
    "OutsideInterval",
    "lc",
    "ps_eval",
    "ps_derivative",
    "ps_antiderivative",
    "ps_integral",
    "ps_mul",
    "ps_add",
    "ps_scale",
    "polynomial",
    "from_expr",
]

DEFAULT_MAX_TERMS = 64


class SeriesNotStable(ArithmeticError):
    """Partial sums did not settle within the term budget."""


class OutsideInterval(ValueError):
    pass


def lc(value, ctx: LCContext = FLOAT) -> LCNumber:
    """Coerce a number, LC text or LCNumber into ``ctx``."""
    if isinstance(value, LCNumber):
        return value.to_context(ctx)
    if isinstance(value, str):
        return ctx.parse(value)
    return ctx.const(value)


@dataclass(frozen=True, eq=False)
class IntervalLC:
    lo: LCNumber
    hi: LCNumber
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        c = self.lo.__class__ is LCNumber and self.hi.__class__ is LCNumber
        if not c:
            raise TypeError("interval endpoints must be LCNumber")
        order = (self.hi - self.lo)
        if order < 0:
            raise ValueError(f"empty interval: {self.lo} > {self.hi}")
        if order.is_zero() and not order.is_exact:
            raise PrecisionLoss(f"endpoints {self.lo} and {self.hi} coincide only up to truncation")
        if order.is_zero() and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate interval must be closed")

    @classmethod
    def closed(cls, lo, hi, ctx: LCContext = FLOAT) -> IntervalLC:
        return cls(lc(lo, ctx), lc(hi, ctx))

    @property
    def ctx(self) -> LCContext:
        return self.lo.ctx

    @property
    def length(self) -> LCNumber:
        return self.hi - self.lo

    def contains(self, x: LCNumber, closure: bool = False) -> bool:
        lo_ok = x > self.lo or (x == self.lo and (self.lo_closed or closure))
        hi_ok = x < self.hi or (x == self.hi and (self.hi_closed or closure))
        return lo_ok and hi_ok

    def covers(self, other: IntervalLC, closure: bool = False) -> bool:
        """Whether ``other`` is a subset of this interval."""
        if other.lo < self.lo or other.hi > self.hi:
            return False
        if not closure:
            if other.lo == self.lo and other.lo_closed and not self.lo_closed:
                return False
            if other.hi == self.hi and other.hi_closed and not self.hi_closed:
                return False
        return True

    def precedes(self, other: IntervalLC) -> bool:
        """Entirely to the left of ``other`` with no shared point."""
        return self.hi < other.lo or (
            self.hi == other.lo and not (self.hi_closed and other.lo_closed)
        )

    def disjoint(self, other: IntervalLC) -> bool:
        return self.precedes(other) or other.precedes(self)

    def translate(self, x: LCNumber) -> IntervalLC:
        return IntervalLC(self.lo + x, self.hi + x, self.lo_closed, self.hi_closed)

    def scale(self, x: LCNumber) -> IntervalLC:
        if x < 0:
            return IntervalLC(self.hi * x, self.lo * x, self.hi_closed, self.lo_closed)
        if x.is_zero():
            return IntervalLC(x, x)
        return IntervalLC(self.lo * x, self.hi * x, self.lo_closed, self.hi_closed)

    def to_context(self, ctx: LCContext) -> IntervalLC:
        return IntervalLC(self.lo.to_context(ctx), self.hi.to_context(ctx), self.lo_closed, self.hi_closed)

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    @classmethod
    def from_json(cls, obj, ctx: LCContext = FLOAT) -> IntervalLC:
        if isinstance(obj, (list, tuple)):
            return cls.closed(obj[0], obj[1], ctx)
        return cls(
            lc(obj["lo"], ctx),
            lc(obj["hi"], ctx),
            bool(obj.get("lo_closed", True)),
            bool(obj.get("hi_closed", True)),
        )

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class PowerSeriesFn:
    """``sum a_n (x - center)^n`` on ``interval``.

    A finite ``coeffs`` list is an exact polynomial.  A ``generator`` (``n -> a_n``)
    gives an infinite series; evaluation then stops once two consecutive terms
    leave the sum unchanged within the truncation window, and fails if that does
    not happen within ``max_terms`` terms.
    """

    interval: IntervalLC
    center: LCNumber
    coeffs: tuple = ()
    generator: Optional[Callable[[int], LCNumber]] = None
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(lc(a, self.ctx) for a in self.coeffs))
        if self.generator is None and len(self.coeffs) > self.max_terms + 1:
            raise ValueError(f"degree {len(self.coeffs) - 1} exceeds {self.max_terms}")
        if not self.interval.contains(self.center, closure=True):
            raise ValueError(f"center {self.center} outside {self.interval}")

    @property
    def ctx(self) -> LCContext:
        return self.interval.ctx

    @property
    def is_polynomial(self) -> bool:
        return self.generator is None

    def coefficient(self, n: int) -> LCNumber:
        if self.generator is not None:
            return lc(self.generator(n), self.ctx)
        return self.coeffs[n] if n < len(self.coeffs) else self.ctx.zero

    def __call__(self, x: LCNumber) -> LCNumber:
        return ps_eval(self, x)


def ps_eval(f: PowerSeriesFn, x: LCNumber, closed: bool = False) -> LCNumber:
    """Value at ``x``; ``closed`` also admits the endpoints of an open interval."""
    if not f.interval.contains(x, closure=closed):
        raise OutsideInterval(f"{x} not in {f.interval}")
    t = x - f.center
    if f.generator is None:
        if not f.coeffs:
            return f.ctx.zero
        acc = f.coeffs[-1]
        for a in reversed(f.coeffs[:-1]):
            acc = acc * t + a
        return acc
    total = f.ctx.zero
    power = f.ctx.one
    quiet = 0
    for n in range(f.max_terms + 1):
        term = f.coefficient(n) * power
        new = total + term
        quiet = quiet + 1 if new.same_within_precision(total) else 0
        total = new
        if quiet == 2:
            return total
        power = power * t
    raise SeriesNotStable(f"partial sums at {x} not stable after {f.max_terms} terms")


def ps_derivative(f: PowerSeriesFn) -> PowerSeriesFn:
    if f.generator is not None:
        g = f.generator
        return replace(f, generator=lambda n: g(n + 1) * (n + 1))
    coeffs = tuple(a * n for n, a in enumerate(f.coeffs))[1:]
    return replace(f, coeffs=coeffs)


def ps_antiderivative(f: PowerSeriesFn) -> PowerSeriesFn:
    ctx = f.ctx
    if f.generator is not None:
        g = f.generator

        def gen(n):
            return ctx.zero if n == 0 else lc(g(n - 1), ctx) * ctx.const(Fraction(1, n))

        return replace(f, generator=gen)
    coeffs = (ctx.zero,) + tuple(a * ctx.const(Fraction(1, n + 1)) for n, a in enumerate(f.coeffs))
    return replace(f, coeffs=coeffs, max_terms=max(f.max_terms, len(coeffs) - 1))


def ps_integral(f: PowerSeriesFn, interval: IntervalLC) -> LCNumber:
    """``F(hi) - F(lo)`` for the antiderivative ``F``; boundary flags are irrelevant."""
    if not f.interval.covers(interval, closure=True):
        raise OutsideInterval(f"{interval} not inside {f.interval}")
    F = ps_antiderivative(f)
    return ps_eval(F, interval.hi, closed=True) - ps_eval(F, interval.lo, closed=True)


def _intersect(a: IntervalLC, b: IntervalLC) -> IntervalLC:
    if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
        lo, lo_c = a.lo, a.lo_closed
    else:
        lo, lo_c = b.lo, b.lo_closed
    if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
        hi, hi_c = a.hi, a.hi_closed
    else:
        hi, hi_c = b.hi, b.hi_closed
    return IntervalLC(lo, hi, lo_c, hi_c)


def _same_center(f: PowerSeriesFn, g: PowerSeriesFn):
    if f.generator is not None or g.generator is not None:
        raise ValueError("only polynomial series can be combined")
    if f.center != g.center:
        raise ValueError("series must share a center")


def ps_mul(f: PowerSeriesFn, g: PowerSeriesFn) -> PowerSeriesFn:
    """Product of two polynomials with the same center, on the common interval."""
    _same_center(f, g)
    ctx = f.ctx
    n = len(f.coeffs) + len(g.coeffs) - 1
    out = [ctx.zero] * max(n, 0)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + a * b
    deg = max(f.max_terms, g.max_terms, n - 1)
    return PowerSeriesFn(_intersect(f.interval, g.interval), f.center, tuple(out), max_terms=deg)


def ps_add(f: PowerSeriesFn, g: PowerSeriesFn) -> PowerSeriesFn:
    _same_center(f, g)
    ctx = f.ctx
    n = max(len(f.coeffs), len(g.coeffs))
    zero = ctx.zero
    out = tuple(
        (f.coeffs[i] if i < len(f.coeffs) else zero) + (g.coeffs[i] if i < len(g.coeffs) else zero)
        for i in range(n)
    )
    return PowerSeriesFn(_intersect(f.interval, g.interval), f.center, out,
                         max_terms=max(f.max_terms, g.max_terms))


def ps_scale(f: PowerSeriesFn, x: LCNumber) -> PowerSeriesFn:
    if f.generator is not None:
        g = f.generator
        return replace(f, generator=lambda n: lc(g(n), f.ctx) * x)
    return replace(f, coeffs=tuple(a * x for a in f.coeffs))


def polynomial(coeffs: Sequence, interval: IntervalLC, center=0) -> PowerSeriesFn:
    """Polynomial ``sum c_n (x - center)^n`` with coefficients given as numbers or LC text."""
    ctx = interval.ctx
    return PowerSeriesFn(interval, lc(center, ctx), tuple(lc(c, ctx) for c in coeffs),
                         max_terms=max(DEFAULT_MAX_TERMS, len(coeffs) - 1))


def from_expr(e: Expr | str, interval: IntervalLC, degree: int | None = None, center=None) -> PowerSeriesFn:
    """Taylor polynomial of a real expression about a real center.

    The center defaults to the standard part of the interval's midpoint.
    Polynomial trees are represented exactly; other expressions are cut at
    ``degree`` (default 32).
    """
    if isinstance(e, str):
        e = parse(e)
    ctx = interval.ctx
    if center is None:
        center = standard_part((interval.lo + interval.hi) * ctx.const(Fraction(1, 2)))
    c = Fraction(center) if ctx.exact else float(center)
    poly = polynomial_degree(e)
    if degree is None:
        degree = poly if poly is not None else 32
    coeffs = taylor_coefficients(e, c, degree)
    return PowerSeriesFn(interval, ctx.const(c), tuple(ctx.const(a) for a in coeffs),
                         max_terms=max(DEFAULT_MAX_TERMS, degree))


@dataclass(frozen=True, eq=False)
class PiecewiseFn:
    """Simple functions on pairwise disjoint intervals, zero elsewhere."""

    pieces: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pieces = []
        for item in self.pieces:
            if isinstance(item, PowerSeriesFn):
                item = (item.interval, item)
            iv, fn = item
            if not fn.interval.covers(iv, closure=True):
                raise ValueError(f"piece {iv} is outside its series' interval {fn.interval}")
            pieces.append((iv, fn))
        pieces.sort(key=lambda p: _sort_key(p[0]))
        for (a, _), (b, _) in zip(pieces, pieces[1:]):
            if not a.precedes(b):
                raise ValueError(f"pieces {a} and {b} overlap")
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def ctx(self) -> LCContext:
        return self.pieces[0][0].ctx if self.pieces else FLOAT

    def piece_for(self, interval: IntervalLC):
        for iv, fn in self.pieces:
            if iv.covers(interval):
                return fn
        return None

    def __call__(self, x: LCNumber) -> LCNumber:
        for iv, fn in self.pieces:
            if iv.contains(x):
                return ps_eval(fn, x)
        return x.ctx.zero

    def to_json(self) -> dict:
        out = []
        for iv, fn in self.pieces:
            if fn.generator is not None:
                raise ValueError("generator-backed series cannot be serialized")
            entry = {"interval": iv.to_json(), "center": str(fn.center),
                     "coeffs": [str(a) for a in fn.coeffs]}
            if fn.interval is not iv:
                entry["domain"] = fn.interval.to_json()
            out.append(entry)
        return {"schema": 1, "pieces": out}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj, ctx: LCContext = FLOAT) -> PiecewiseFn:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("schema", 1) != 1:
            raise ValueError(f"unsupported schema {obj.get('schema')}")
        pieces = []
        for p in obj["pieces"]:
            iv = IntervalLC.from_json(p["interval"], ctx)
            dom = IntervalLC.from_json(p["domain"], ctx) if "domain" in p else iv
            coeffs = tuple(lc(c, ctx) for c in p["coeffs"])
            fn = PowerSeriesFn(dom, lc(p.get("center", "0"), ctx), coeffs,
                               max_terms=max(DEFAULT_MAX_TERMS, len(coeffs) - 1))
            pieces.append((iv, fn))
        return cls(tuple(pieces))


def _sort_key(iv: IntervalLC):
    return _LCKey(iv.lo, not iv.lo_closed)


class _LCKey:
    __slots__ = ("x", "flag")

    def __init__(self, x, flag):
        self.x = x
        self.flag = flag

    def __lt__(self, other):
        c = self.x - other.x
        if c.is_zero():
            return self.flag < other.flag
        return c < 0
