"""Dirac-like bumps ``delta(x) = (c/h) (1 - u^2)^(k+1)``, ``u = (x - r)/h``.

``c = 1 / B(k)`` with ``B(k) = int_{-1}^{1} (1 - u^2)^(k+1) du``, so the bump has
unit integral for any width ``h``.  Pairings against extensions are computed
from exact moments ``I_i = int delta^(m)(x) (x - s)^i dx`` with ``s = st(r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import EXACT, LCNumber, classify, is_finite, standard_part
from .expr import diff_n, eval_real
from .extension import ExtensionFn
from .simple import (
    IntervalLC,
    PiecewiseFn,
    PowerSeriesFn,
    ps_derivative,
    ps_integral,
)
from .taylor import taylor_coefficients

__all__ = [
    "DeltaSpec",
    "InsufficientSmoothness",
    "bump_integral",
    "make_delta",
    "pair",
    "pair_derivative",
    "pairing_row",
]


class InsufficientSmoothness(ValueError):
    """Derivative order above the bump's smoothness."""


def bump_integral(k: int) -> Fraction:
    """``int_{-1}^{1} (1 - u^2)^(k+1) du`` via ``I_n = 2n/(2n+1) I_{n-1}``, ``I_0 = 2``."""
    value = Fraction(2)
    for n in range(1, k + 2):
        value *= Fraction(2 * n, 2 * n + 1)
    return value


@dataclass(frozen=True, eq=False)
class DeltaSpec:
    r: LCNumber
    h: LCNumber
    k: int
    c: Fraction

    @property
    def support(self) -> IntervalLC:
        return IntervalLC(self.r - self.h, self.r + self.h)

    def series(self, m: int = 0) -> PowerSeriesFn:
        """The bump (or its ``m``-th derivative) as a polynomial about ``r``."""
        ctx = self.r.ctx
        inv_h = 1 / self.h
        scale = ctx.const(self.c) * inv_h
        inv_h2 = inv_h * inv_h
        coeffs = [ctx.zero] * (2 * self.k + 3)
        power = ctx.one
        for j in range(self.k + 2):
            coeffs[2 * j] = scale * power * ((-1) ** j * math.comb(self.k + 1, j))
            power = power * inv_h2
        fn = PowerSeriesFn(self.support, self.r, tuple(coeffs))
        for _ in range(m):
            fn = ps_derivative(fn)
        return fn


def make_delta(r, h=None, k: int = 0) -> tuple[DeltaSpec, PiecewiseFn]:
    """Bump of smoothness ``C^k`` centred at ``r`` with half-width ``h`` (default ``d``)."""
    if not isinstance(r, LCNumber):
        r = EXACT.const(Fraction(r))
    ctx = r.ctx
    h = ctx.d if h is None else h
    if k < 0:
        raise ValueError("smoothness must be non-negative")
    if not is_finite(r):
        raise ValueError(f"center {r} is infinite")
    if classify(h) != "infinitesimal" or h < 0:
        raise ValueError(f"half-width {h} must be a positive infinitesimal")
    spec = DeltaSpec(r, h, k, 1 / bump_integral(k))
    return spec, PiecewiseFn(((spec.support, spec.series()),))


def _moments(delta: DeltaSpec, m: int, degree: int, s: Fraction) -> list:
    """Standard parts of ``int delta^(m)(x) (x - s)^i dx`` for ``i <= degree``."""
    ctx = delta.r.ctx
    base = delta.series(m)
    rho = delta.r - ctx.const(s)
    out = []
    for i in range(degree + 1):
        # (x - s)^i = sum_l C(i, l) rho^(i-l) (x - r)^l
        shift = [ctx.const(math.comb(i, l)) * rho ** (i - l) for l in range(i + 1)]
        coeffs = [ctx.zero] * (len(base.coeffs) + i)
        for a_idx, a in enumerate(base.coeffs):
            if a.is_zero():
                continue
            for l, b in enumerate(shift):
                coeffs[a_idx + l] = coeffs[a_idx + l] + a * b
        prod = PowerSeriesFn(base.interval, base.center, tuple(coeffs),
                             max_terms=max(64, len(coeffs)))
        out.append(standard_part(ps_integral(prod, delta.support)))
    return out


def pair_derivative(delta: DeltaSpec, m: int, f: ExtensionFn) -> float:
    """``int delta^(m) * ext^j f`` over the support; equals ``(-1)^m f^(m)(st r)``."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    if m > delta.k:
        raise InsufficientSmoothness(f"m = {m} exceeds the bump smoothness k = {delta.k}")
    s = standard_part(delta.r)
    a, b = f.domain
    if not a < s < b:
        raise ValueError(f"st(r) = {s} is not interior to the domain [{a}, {b}]")
    s = Fraction(s)
    degree = f.order if f.order is not None else m + 2
    moments = _moments(delta, m, degree, s)
    coeffs = taylor_coefficients(f.base, s, degree)
    total = sum((c * mo for c, mo in zip(coeffs, moments) if mo != 0), Fraction(0))
    return total if isinstance(total, Fraction) and f.order is not None and f.order < m else float(total)


def pair(delta: DeltaSpec, f: ExtensionFn) -> float:
    """Sifting: ``int delta * ext^j f = f(st r)``."""
    return pair_derivative(delta, 0, f)


def pairing_row(delta: DeltaSpec, m: int, f: ExtensionFn, label: str = "") -> dict:
    """One row of a pairing table with the expected value from symbolic differentiation."""
    value = pair_derivative(delta, m, f)
    s = float(standard_part(delta.r))
    if f.order is not None and f.order < m:
        expected = 0.0
    else:
        expected = (-1) ** m * eval_real(diff_n(f.base, m), s)
    return {
        "function": label or str(f.base),
        "r": str(delta.r),
        "h": str(delta.h),
        "k": delta.k,
        "m": m,
        "expected": expected,
        "computed": float(value),
        "residual": abs(float(value) - expected),
    }
