"""Seeded random generators for numbers, sets and functions used by the suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import LCContext, LCNumber
from .measure import MeasurableSet, RealInterval, RealSet, TailCertificate
from .simple import IntervalLC, PiecewiseFn, polynomial

__all__ = [
    "rational",
    "lc_number",
    "finite_lc",
    "infinitesimal",
    "measurable_set",
    "real_set",
    "random_polynomial",
    "random_interval",
    "nonzero_lc",
    "step_function",
]


def rational(rng: random.Random, span: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _coef(rng, ctx: LCContext):
    c = rational(rng)
    while c == 0:
        c = rational(rng)
    return c if ctx.exact else float(c)


def lc_number(rng: random.Random, ctx: LCContext, lo: int = -3, hi: int = 6, terms: int = 5,
              dens=(1, 1, 2, 3)) -> LCNumber:
    """Sparse series with exponents ``k/q`` in ``[lo, hi]``; may be zero."""
    n = rng.randint(0, terms)
    out = []
    for _ in range(n):
        q = rng.choice(dens)
        out.append((Fraction(rng.randint(lo * q, hi * q), q), _coef(rng, ctx)))
    return LCNumber(out, ctx)


def nonzero_lc(rng: random.Random, ctx: LCContext, **kw) -> LCNumber:
    while True:
        x = lc_number(rng, ctx, **kw)
        if not x.is_zero():
            return x


def finite_lc(rng: random.Random, ctx: LCContext, terms: int = 5) -> LCNumber:
    return lc_number(rng, ctx, lo=0, hi=6, terms=terms)


def infinitesimal(rng: random.Random, ctx: LCContext) -> LCNumber:
    """Zero or a small positive-valuation series."""
    if rng.random() < 0.3:
        return ctx.zero
    q = Fraction(rng.randint(1, 6), rng.choice((1, 2, 3)))
    return LCNumber([(q, _coef(rng, ctx)), (q + 1, _coef(rng, ctx))], ctx)


def measurable_set(rng: random.Random, ctx: LCContext, max_intervals: int = 5,
                   tail: bool = True) -> MeasurableSet:
    """Disjoint finite union in the finite part, with infinitesimal endpoint jitter.

    Real anchors are at least 1/6 apart so the jitter never creates overlaps;
    some intervals get infinitesimal length.
    """
    k = rng.randint(0, max_intervals)
    anchors = sorted(rng.sample(range(-60, 60), 2 * k))
    ivs = []
    for i in range(k):
        a = ctx.const(Fraction(anchors[2 * i], 6)) + infinitesimal(rng, ctx)
        if rng.random() < 0.25:
            b = a + abs(infinitesimal(rng, ctx)) + ctx.monomial(1, rng.randint(1, 4))
        else:
            b = ctx.const(Fraction(anchors[2 * i + 1], 6)) + infinitesimal(rng, ctx)
        ivs.append(IntervalLC(a, b, rng.random() < 0.7, rng.random() < 0.7))
    cert = None
    if tail and rng.random() < 0.2:
        cert = TailCertificate(Fraction(rng.randint(1, 8), rng.choice((1, 2))), "random tail")
    return MeasurableSet(tuple(ivs), cert)


def real_set(rng: random.Random, max_intervals: int = 6) -> RealSet:
    k = rng.randint(0, max_intervals)
    points = sorted(rng.sample(range(-400, 400), 2 * k))
    out = []
    for i in range(k):
        a, b = Fraction(points[2 * i], 20), Fraction(points[2 * i + 1], 20)
        out.append(RealInterval(a, b, rng.random() < 0.5, rng.random() < 0.5))
    return RealSet(tuple(out))


def random_polynomial(rng: random.Random, interval: IntervalLC, degree: int = 5,
                      center=None) -> PiecewiseFn:
    ctx = interval.ctx
    center = interval.lo if center is None else center
    coeffs = [rational(rng) if ctx.exact else float(rational(rng)) for _ in range(rng.randint(0, degree) + 1)]
    return PiecewiseFn((polynomial(coeffs, interval, center),))


def random_interval(rng: random.Random, ctx: LCContext) -> IntervalLC:
    a = Fraction(rng.randint(-20, 10), 4)
    b = a + Fraction(rng.randint(1, 20), 4)
    return IntervalLC(ctx.const(a) + infinitesimal(rng, ctx), ctx.const(b) + infinitesimal(rng, ctx))


def step_function(rng: random.Random, ctx: LCContext, max_steps: int = 5, signed: bool = False):
    """``(interval, value)`` pairs on a finite-measure base; values finite."""
    base = measurable_set(rng, ctx, max_steps, tail=False)
    steps = []
    for iv in base.intervals:
        v = abs(finite_lc(rng, ctx, terms=3))
        if signed and rng.random() < 0.5:
            v = -v
        steps.append((iv, v))
    return tuple(steps)
