"""Order-k extensions of real functions to nearstandard Levi-Civita points.

``ext^k f(r + eps) = sum_{i<=k} f^(i)(r) eps^i / i!`` with ``r = st(x)``.
With ``order=None`` (infinite order) the sum runs until the powers of ``eps``
leave the retained window; that is only allowed for trees built from
polynomials, ``exp``, ``sin`` and ``cos``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import LCNumber, classify, standard_part
from .expr import DomainError, Expr, is_entire, parse
from .taylor import polynomial_degree, taylor_coefficients

__all__ = ["ExtensionFn", "NotNearstandard", "extend", "extension"]

_MAX_TERMS = 512


class NotNearstandard(ValueError):
    """The point is infinite or its shadow lies outside the domain."""


@dataclass(frozen=True)
class ExtensionFn:
    base: Expr
    order: Optional[int]  # None stands for infinite order
    domain: tuple  # (a, b); b may be math.inf

    def __post_init__(self):
        if self.order is None and not is_entire(self.base):
            raise ValueError("infinite order needs a polynomial/exp/sin/cos expression")
        if self.order is not None and self.order < 0:
            raise ValueError("order must be non-negative")
        a, b = self.domain
        if a > b:
            raise ValueError("empty domain")

    def __call__(self, x: LCNumber) -> LCNumber:
        return extend(self, x)


def extension(text_or_expr, order: Optional[int] = None, domain=(-math.inf, math.inf)) -> ExtensionFn:
    base = parse(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    return ExtensionFn(base, order, tuple(domain))


def _real_point(r, exact: bool):
    if exact:
        return Fraction(r)
    return float(r)


def extend(f: ExtensionFn, x: LCNumber) -> LCNumber:
    """Evaluate ``ext^k f`` at the nearstandard point ``x``."""
    ctx = x.ctx
    if classify(x) == "infinite":
        raise NotNearstandard(f"{x} is infinite")
    r = standard_part(x)
    a, b = f.domain
    if not a <= r <= b:
        raise NotNearstandard(f"st(x) = {r} lies outside [{a}, {b}]")
    eps = x - ctx.const(r)
    rr = _real_point(r, ctx.exact)
    if eps.is_zero() and eps.is_exact:
        return ctx.const(_coef(taylor_coefficients(f.base, rr, 0)[0], ctx))

    lam = eps.valuation() if not eps.is_zero() else eps.prec
    degree = polynomial_degree(f.base)
    exact_sum = f.order is not None
    if f.order is not None:
        n = f.order
    elif degree is not None and degree <= _MAX_TERMS:
        n, exact_sum = degree, True
    else:
        # enough powers to fill the window above the first non-vanishing term
        den = eps._den if not eps.is_zero() else lam.denominator
        n = math.floor(Fraction(ctx.depth, den) / lam) + 1
    coeffs = _coefficients(f, rr, n, ctx)
    if not exact_sum:
        first = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if first:
            extra = min(first, _MAX_TERMS - n)
            coeffs = _coefficients(f, rr, n + extra, ctx)
            n += extra
    # Horner in eps
    acc = ctx.const(_coef(coeffs[n], ctx))
    for i in range(n - 1, -1, -1):
        acc = acc * eps + _coef(coeffs[i], ctx)
    if not exact_sum:
        acc = acc.with_prec((n + 1) * lam)
    return acc


def _coefficients(f: ExtensionFn, r, n: int, ctx):
    if n > _MAX_TERMS:
        raise ValueError(f"extension needs {n} Taylor terms; limit is {_MAX_TERMS}")
    try:
        return taylor_coefficients(f.base, r, n)
    except DomainError as exc:
        raise DomainError(f"order {n} not available at {r}: {exc}") from None


def _coef(c, ctx):
    if isinstance(c, float) and not math.isfinite(c):
        raise DomainError("non-finite Taylor coefficient")
    return ctx.coerce(c)
