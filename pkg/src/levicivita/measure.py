"""The uniform measure ``m`` and the real-valued measure ``m_L``.

Sets are finite disjoint unions of LC intervals, optionally followed by a tail
certificate: a promise that whatever intervals were left out have total length
of valuation at least ``bound_exponent > 0``, hence infinitesimal.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import EXACT, FLOAT, LCContext, LCNumber, ext_add, is_finite, standard_part, valuation
from .simple import IntervalLC, _sort_key

__all__ = [
    "TailCertificate",
    "MeasurableSet",
    "RealInterval",
    "RealSet",
    "RectangleND",
    "Shadow",
    "Sandwich",
    "OverlapError",
    "m_measure",
    "mL_measure",
    "translate",
    "scale",
    "st_preimage_sandwich",
    "shadow",
    "rect_measure",
    "csv_rows",
]


class OverlapError(ValueError):
    pass


@dataclass(frozen=True)
class TailCertificate:
    bound_exponent: Fraction
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bound_exponent", Fraction(self.bound_exponent))
        if self.bound_exponent <= 0:
            raise ValueError("a tail must have positive bound exponent (infinitesimal total length)")


def _join(a: IntervalLC, b: IntervalLC) -> IntervalLC:
    """Hull of two intervals known to overlap or touch, ``a`` sorted first."""
    if b.hi > a.hi or (b.hi == a.hi and b.hi_closed):
        hi, hi_c = b.hi, b.hi_closed
    else:
        hi, hi_c = a.hi, a.hi_closed
    return IntervalLC(a.lo, hi, a.lo_closed, hi_c)


def _normalize(intervals: Iterable[IntervalLC], allow_overlap: bool) -> tuple:
    items = sorted(intervals, key=_sort_key)
    out: list[IntervalLC] = []
    for iv in items:
        if not out:
            out.append(iv)
            continue
        prev = out[-1]
        gap = iv.lo - prev.hi
        if gap > 0 or (gap.is_zero() and not (prev.hi_closed or iv.lo_closed)):
            out.append(iv)
        elif gap.is_zero() or allow_overlap:
            out[-1] = _join(prev, iv)  # touching at a point that one of them holds
        else:
            raise OverlapError(f"intervals {prev} and {iv} overlap")
    return tuple(out)


@dataclass(frozen=True, eq=False)
class MeasurableSet:
    intervals: tuple = ()
    tail: Optional[TailCertificate] = None

    def __post_init__(self):
        ivs = tuple(self.intervals)
        if ivs:
            ctx = ivs[0].ctx
            if any(iv.ctx != ctx for iv in ivs):
                raise ValueError("intervals use different contexts")
        object.__setattr__(self, "intervals", _normalize(ivs, allow_overlap=False))

    @classmethod
    def of(cls, *pairs, ctx: LCContext = FLOAT, tail=None) -> MeasurableSet:
        """Closed intervals from ``(lo, hi)`` pairs of numbers or LC text."""
        return cls(tuple(IntervalLC.closed(a, b, ctx) for a, b in pairs), tail)

    @property
    def ctx(self) -> LCContext:
        return self.intervals[0].ctx if self.intervals else FLOAT

    def is_empty(self) -> bool:
        return not self.intervals and self.tail is None

    def issubset(self, other: MeasurableSet) -> bool:
        if self.tail is not None and other.tail is None:
            return False
        return all(any(big.covers(iv) for big in other.intervals) for iv in self.intervals)

    def union(self, other: MeasurableSet) -> MeasurableSet:
        """Disjoint union; raises ``OverlapError`` if the sets meet."""
        tails = [t for t in (self.tail, other.tail) if t is not None]
        tail = min(tails, key=lambda t: t.bound_exponent) if tails else None
        return MeasurableSet(self.intervals + other.intervals, tail)

    def to_json(self) -> dict:
        out = {"schema": 1, "intervals": [iv.to_json() for iv in self.intervals]}
        if self.tail is not None:
            out["tail"] = {"bound_exponent": str(self.tail.bound_exponent),
                           "description": self.tail.description}
        return out

    @classmethod
    def from_json(cls, obj, ctx: LCContext = FLOAT) -> MeasurableSet:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, list):
            obj = {"intervals": obj}
        if obj.get("schema", 1) != 1:
            raise ValueError(f"unsupported schema {obj.get('schema')}")
        tail = None
        if obj.get("tail"):
            t = obj["tail"]
            tail = TailCertificate(Fraction(t["bound_exponent"]), t.get("description", ""))
        return cls(tuple(IntervalLC.from_json(iv, ctx) for iv in obj["intervals"]), tail)

    def __str__(self):
        body = " u ".join(str(iv) for iv in self.intervals) or "{}"
        if self.tail is not None:
            body += f" u tail(O(d^{self.tail.bound_exponent}))"
        return body


def m_measure(A: MeasurableSet, ctx: LCContext | None = None) -> LCNumber:
    """Total length; a tail leaves the coefficients from its bound exponent on unknown."""
    ctx = ctx or A.ctx
    total = ctx.zero
    for iv in A.intervals:
        total = total + iv.length
    if A.tail is not None:
        total = total.with_prec(A.tail.bound_exponent)
    return total


def mL_measure(A: MeasurableSet):
    """Sum of standard parts of the lengths; ``math.inf`` if any length is infinite."""
    total = Fraction(0) if A.ctx.exact else 0.0
    for iv in A.intervals:
        total = ext_add(total, standard_part(iv.length))
    return total


def translate(A: MeasurableSet, x: LCNumber) -> MeasurableSet:
    return MeasurableSet(tuple(iv.translate(x) for iv in A.intervals), A.tail)


def scale(A: MeasurableSet, x: LCNumber) -> tuple[MeasurableSet, dict]:
    """``xA`` together with a report on homogeneity of ``m_L``."""
    tail = A.tail
    if tail is not None and not x.is_zero():
        bound = tail.bound_exponent + valuation(x)
        if bound <= 0:
            raise ValueError("scaling makes the tail non-infinitesimal")
        tail = TailCertificate(bound, tail.description)
    elif x.is_zero():
        tail = None
    if x.is_zero():
        image = MeasurableSet((IntervalLC(x, x),)) if A.intervals or A.tail else MeasurableSet()
    else:
        image = MeasurableSet(tuple(iv.scale(x) for iv in A.intervals), tail)
    before = mL_measure(A)
    after = mL_measure(image)
    report = {"mL": after, "mL_before": before, "asserted": False}
    if before != math.inf and is_finite(x):
        expected = abs(standard_part(x)) * before
        report.update(asserted=True, expected=expected, holds=_close(after, expected))
    else:
        report["note"] = "homogeneity not asserted: infinite measure or infinite scale"
    return image, report


def _close(a, b, tol=1e-12):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(b))


# --------------------------------------------------------------- real sets
@dataclass(frozen=True, order=True)
class RealInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty real interval {self}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return (self.lo < x or (self.lo == x and self.lo_closed)) and (
            x < self.hi or (x == self.hi and self.hi_closed)
        )


@dataclass(frozen=True)
class RealSet:
    """Finite union of disjoint real intervals with exact endpoints."""

    intervals: tuple = field(default_factory=tuple)

    def __post_init__(self):
        items = sorted(
            RealInterval(*iv) if isinstance(iv, (tuple, list)) else iv for iv in self.intervals
        )
        out: list[RealInterval] = []
        for iv in items:
            if out:
                prev = out[-1]
                if iv.lo < prev.hi:
                    raise OverlapError(f"real intervals {prev} and {iv} overlap")
                if iv.lo == prev.hi and (prev.hi_closed or iv.lo_closed):
                    if iv.hi > prev.hi or (iv.hi == prev.hi and iv.hi_closed):
                        hi, hic = iv.hi, iv.hi_closed
                    else:
                        hi, hic = prev.hi, prev.hi_closed
                    out[-1] = RealInterval(prev.lo, hi, prev.lo_closed, hic)
                    continue
            out.append(iv)
        object.__setattr__(self, "intervals", tuple(out))

    def measure(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), Fraction(0))

    def to_json(self) -> dict:
        return {"schema": 1, "intervals": [
            {"lo": str(iv.lo), "hi": str(iv.hi), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}
            for iv in self.intervals]}

    @classmethod
    def from_json(cls, obj) -> RealSet:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(
            RealInterval(Fraction(iv["lo"]), Fraction(iv["hi"]), iv.get("lo_closed", True),
                         iv.get("hi_closed", True))
            for iv in obj["intervals"]))


@dataclass(frozen=True)
class Sandwich:
    inner: MeasurableSet
    outer: MeasurableSet
    value: Fraction

    @property
    def gap(self):
        return mL_measure(self.outer) - mL_measure(self.inner)


def st_preimage_sandwich(R: RealSet, n: int, ctx: LCContext = EXACT) -> Sandwich:
    """LC interval unions with ``inner <= st^-1(R) <= outer``.

    Closed endpoints are copied for ``inner`` and pushed out by ``1/n`` for
    ``outer``; open endpoints are pulled in by ``1/n`` for ``inner`` (the monad
    of an open endpoint lies outside the preimage) and kept for ``outer``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    step = Fraction(1, n)
    inner, outer = [], []
    for iv in R.intervals:
        lo_in = iv.lo if iv.lo_closed else iv.lo + step
        hi_in = iv.hi if iv.hi_closed else iv.hi - step
        if lo_in <= hi_in:
            inner.append(IntervalLC(ctx.const(lo_in), ctx.const(hi_in)))
        lo_out = iv.lo - step if iv.lo_closed else iv.lo
        hi_out = iv.hi + step if iv.hi_closed else iv.hi
        outer.append(IntervalLC(ctx.const(lo_out), ctx.const(hi_out), iv.lo_closed, iv.hi_closed))
    outer_set = MeasurableSet(_normalize(outer, allow_overlap=True))
    return Sandwich(MeasurableSet(tuple(inner)), outer_set, R.measure())


@dataclass(frozen=True)
class Shadow:
    intervals: RealSet
    points: tuple
    tail_points: bool = False  # the tail's shadow is an unlisted null set of points

    def measure(self):
        return self.intervals.measure()


def shadow(A: MeasurableSet) -> Shadow:
    """Standard-part image: closed real intervals plus isolated points."""
    spans, points = [], []
    for iv in A.intervals:
        if not (is_finite(iv.lo) and is_finite(iv.hi)):
            raise ValueError(f"{iv} has an infinite endpoint")
        a, b = standard_part(iv.lo), standard_part(iv.hi)
        if a < b:
            spans.append((Fraction(a), Fraction(b)))
        else:
            points.append(Fraction(a))
    merged: list[list[Fraction]] = []
    for a, b in sorted(spans):
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    real = RealSet(tuple(RealInterval(a, b) for a, b in merged))
    loose = sorted({p for p in points if not any(iv.contains(p) for iv in real.intervals)})
    return Shadow(real, tuple(loose), A.tail is not None)


@dataclass(frozen=True, eq=False)
class RectangleND:
    sides: tuple

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple(self.sides))
        if not self.sides:
            raise ValueError("a rectangle needs at least one side")

    @property
    def dim(self) -> int:
        return len(self.sides)

    def volume(self) -> LCNumber:
        vol = self.sides[0].length
        for s in self.sides[1:]:
            vol = vol * s.length
        return vol

    def disjoint(self, other: RectangleND) -> bool:
        return any(a.disjoint(b) for a, b in zip(self.sides, other.sides))


def rect_measure(rects: Sequence[RectangleND]):
    """``sum st(product of side lengths)`` over pairwise disjoint rectangles."""
    rects = list(rects)
    if not rects:
        return Fraction(0)
    dim = rects[0].dim
    for r in rects:
        if r.dim != dim:
            raise ValueError(f"dimension mismatch: {r.dim} vs {dim}")
    for i, r in enumerate(rects):
        for s in rects[i + 1:]:
            if not r.disjoint(s):
                raise OverlapError("rectangles overlap (no separating axis)")
    total = Fraction(0) if rects[0].sides[0].ctx.exact else 0.0
    for r in rects:
        total = ext_add(total, standard_part(r.volume()))
    return total


def csv_rows(sets: Iterable[tuple[str, MeasurableSet]]) -> str:
    """CSV with columns ``set_id, m, m_L, shadow_measure``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set_id", "m", "m_L", "shadow_measure"])
    for sid, A in sets:
        try:
            sh = shadow(A).measure()
            sh = str(sh) if A.ctx.exact else repr(float(sh))
        except ValueError:
            sh = "n/a"
        w.writerow([sid, str(m_measure(A)), str(mL_measure(A)), sh])
    return buf.getvalue()
