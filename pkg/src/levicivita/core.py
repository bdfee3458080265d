"""Truncated arithmetic on the Levi-Civita field.

An element is a finite sorted series ``sum c_i d**q_i`` with rational
exponents.  Every value carries a context (``depth`` and the coefficient
threshold ``zeta``) and a precision bound ``prec``: coefficients at exponents
``q < prec`` are known exactly, everything from ``prec`` on is unknown
(``prec is None`` means the series is exact).  Results keep only exponents up
to ``lambda + W`` where ``W`` is ``depth`` steps of the finest exponent grid of
the operands; whatever is cut lowers ``prec``.

``zeta == 0`` selects exact coefficients (``gmpy2.mpq``); otherwise
coefficients are floats and anything with ``|c| <= zeta`` counts as zero.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import gmpy2
from gmpy2 import mpq

from . import kernels

__all__ = [
    "LCContext",
    "LCNumber",
    "EXACT",
    "FLOAT",
    "ConfigMismatch",
    "PrecisionLoss",
    "lc_add",
    "lc_sub",
    "lc_mul",
    "lc_inv",
    "lc_div",
    "lc_cmp",
    "lc_root",
    "valuation",
    "standard_part",
    "classify",
    "monad_eq",
    "ext_add",
]

_MPQ = type(mpq(0))


class ConfigMismatch(ValueError):
    """Operands were built under different truncation settings."""


class PrecisionLoss(ArithmeticError):
    """The requested quantity depends on coefficients lost to truncation."""


@dataclass(frozen=True)
class LCContext:
    """Truncation settings shared by every number in a computation."""

    depth: int = 16
    zeta: float = 1e-13

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be positive")
        if self.zeta < 0:
            raise ValueError("zeta must be non-negative")

    @property
    def exact(self) -> bool:
        return self.zeta == 0

    def coerce(self, value):
        """Convert a real scalar to this context's coefficient type."""
        if self.zeta == 0:
            if isinstance(value, float) and not math.isfinite(value):
                raise ValueError(f"non-finite coefficient {value!r}")
            return mpq(value)
        return float(value)

    def const(self, value) -> LCNumber:
        return self.monomial(value, 0)

    def monomial(self, coeff, exponent=1) -> LCNumber:
        return LCNumber([(exponent, coeff)], self)

    @property
    def d(self) -> LCNumber:
        """The canonical positive infinitesimal."""
        return self.monomial(1, 1)

    @property
    def zero(self) -> LCNumber:
        return LCNumber((), self)

    @property
    def one(self) -> LCNumber:
        return self.monomial(1, 0)

    def parse(self, text: str) -> LCNumber:
        from .textfmt import parse_lc

        return parse_lc(text, self)


EXACT = LCContext(zeta=0)
FLOAT = LCContext()


def _pmin(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return p if p <= q else q


def _last_unit_below(prec: Fraction, den: int) -> int:
    """Largest integer ``k`` with ``k/den < prec``."""
    return -((-prec.numerator * den) // prec.denominator) - 1


def _reduce(e, den):
    if den == 1 or not e:
        return e, (1 if not e else den)
    g = math.gcd(den, *e)
    if g == 1:
        return e, den
    return tuple(x // g for x in e), den // g


def _to_user(c):
    if isinstance(c, _MPQ):
        return Fraction(int(c.numerator), int(c.denominator))
    return c


class LCNumber:
    """Immutable truncated Levi-Civita number.

    >>> d = EXACT.d
    >>> (1 + d) * (1 - d)
    LCNumber('1 - d^2')
    """

    __slots__ = ("_e", "_c", "_den", "_prec", "ctx")

    def __init__(self, terms=(), ctx: LCContext | None = None, prec=None):
        ctx = FLOAT if ctx is None else ctx
        acc: dict[Fraction, object] = {}
        for q, c in terms:
            q = Fraction(q)
            c = ctx.coerce(c)
            acc[q] = acc[q] + c if q in acc else c
        prec = None if prec is None else Fraction(prec)
        den = 1
        for q in acc:
            den = den * q.denominator // math.gcd(den, q.denominator)
        items = sorted(
            (q, c)
            for q, c in acc.items()
            if abs(c) > ctx.zeta and (prec is None or q < prec)
        )
        e = tuple(q.numerator * (den // q.denominator) for q, _ in items)
        c = tuple(c for _, c in items)
        if e and e[-1] > e[0] + ctx.depth:
            cut = e[0] + ctx.depth
            k = bisect_right(e, cut)
            e, c = e[:k], c[:k]
            prec = _pmin(prec, Fraction(cut + 1, den))
        e, den = _reduce(e, den)
        self._e = e
        self._c = c
        self._den = den
        self._prec = prec
        self.ctx = ctx

    @classmethod
    def _raw(cls, e, c, den, prec, ctx):
        if prec is not None and e:
            last = _last_unit_below(prec, den)
            if e[-1] > last:
                k = bisect_right(e, last)
                e, c = e[:k], c[:k]
        e, den = _reduce(e, den)
        obj = object.__new__(cls)
        obj._e = e
        obj._c = c
        obj._den = den
        obj._prec = prec
        obj.ctx = ctx
        return obj

    # ------------------------------------------------------------------ views
    @property
    def terms(self) -> tuple[tuple[Fraction, object], ...]:
        """``(exponent, coefficient)`` pairs in increasing exponent order."""
        den = self._den
        return tuple(
            (Fraction(e, den), _to_user(c)) for e, c in zip(self._e, self._c)
        )

    @property
    def prec(self) -> Fraction | None:
        return self._prec

    @property
    def is_exact(self) -> bool:
        return self._prec is None

    def coeff(self, q) -> object:
        q = Fraction(q)
        if self._prec is not None and q >= self._prec:
            raise PrecisionLoss(f"coefficient at d^{q} lies beyond O(d^{self._prec})")
        num = q * self._den
        if num.denominator == 1:
            k = bisect_right(self._e, num.numerator) - 1
            if k >= 0 and self._e[k] == num.numerator:
                return _to_user(self._c[k])
        return Fraction(0) if self.ctx.exact else 0.0

    def is_zero(self) -> bool:
        return not self._e

    def __bool__(self) -> bool:
        return bool(self._e)

    def __len__(self) -> int:
        return len(self._e)

    def to_context(self, ctx: LCContext) -> LCNumber:
        """Re-express this number under other truncation settings."""
        if ctx == self.ctx:
            return self
        return LCNumber(
            ((q, float(c) if not ctx.exact else c) for q, c in self.terms),
            ctx,
            self._prec,
        )

    def with_prec(self, prec) -> LCNumber:
        """Copy with the precision bound lowered to ``prec``."""
        prec = _pmin(self._prec, None if prec is None else Fraction(prec))
        return LCNumber._raw(self._e, self._c, self._den, prec, self.ctx)

    # ------------------------------------------------------------- arithmetic
    def _lift(self, other) -> LCNumber:
        if isinstance(other, LCNumber):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ConfigMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (Real, _MPQ)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _add(other, self, -1)

    def __neg__(self):
        return LCNumber._raw(self._e, tuple(-c for c in self._c), self._den, self._prec, self.ctx)

    def __pos__(self):
        return self

    def __abs__(self):
        if self._e and self._c[0] < 0:
            return -self
        return self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _mul(self, lc_inv(other))

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _mul(other, lc_inv(self))

    def __pow__(self, n):
        if isinstance(n, int):
            if n < 0:
                return lc_inv(self) ** (-n)
            result = self.ctx.one
            base = self
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        q = Fraction(n)
        return lc_root(self, q.denominator) ** q.numerator

    # --------------------------------------------------------------- ordering
    def _cmp(self, other) -> int:
        other = self._lift(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare LCNumber with {type(other).__name__}")
        return lc_cmp(self, other)

    def __eq__(self, other):
        if not isinstance(other, (LCNumber, Real, _MPQ)):
            return NotImplemented
        return self._cmp(other) == 0

    def __ne__(self, other):
        if not isinstance(other, (LCNumber, Real, _MPQ)):
            return NotImplemented
        return self._cmp(other) != 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None  # equality is threshold-based in float mode

    # ------------------------------------------------------------- shortcuts
    def valuation(self):
        return valuation(self)

    def st(self):
        return standard_part(self)

    def same_within_precision(self, other: LCNumber) -> bool:
        """True when both agree on every exponent below both precision bounds."""
        return _max_residual(self, other) == 0

    def __str__(self) -> str:
        from .textfmt import format_lc

        return format_lc(self)

    def __repr__(self) -> str:
        return f"LCNumber({str(self)!r})"


# ---------------------------------------------------------------- internals
def _common(a: LCNumber, b: LCNumber):
    if a._den == b._den:
        return a._e, b._e, a._den
    den = a._den * b._den // math.gcd(a._den, b._den)
    fa = den // a._den
    fb = den // b._den
    ea = a._e if fa == 1 else tuple(x * fa for x in a._e)
    eb = b._e if fb == 1 else tuple(x * fb for x in b._e)
    return ea, eb, den


def _check(a: LCNumber, b: LCNumber) -> LCContext:
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ConfigMismatch(f"{a.ctx} vs {b.ctx}")
    return a.ctx


def _add(a: LCNumber, b: LCNumber, sign: int) -> LCNumber:
    ctx = _check(a, b)
    ea, eb, den = _common(a, b)
    e, c = kernels.add(ea, a._c, eb, b._c, sign, ctx.zeta, ctx.zeta == 0)
    prec = _pmin(a._prec, b._prec)
    if e:
        cut = e[0] + ctx.depth
        if e[-1] > cut:
            k = bisect_right(e, cut)
            e, c = e[:k], c[:k]
            prec = _pmin(prec, Fraction(cut + 1, den))
    return LCNumber._raw(e, c, den, prec, ctx)


def _low(x: LCNumber):
    """Lower bound for the valuation, or None for an exact zero."""
    if x._e:
        return Fraction(x._e[0], x._den)
    return x._prec


def _mul(a: LCNumber, b: LCNumber) -> LCNumber:
    ctx = _check(a, b)
    prec = None
    if a._prec is not None or b._prec is not None:
        la, lb = _low(a), _low(b)
        if a._prec is not None and lb is not None:
            prec = a._prec + lb
        if b._prec is not None and la is not None:
            prec = _pmin(prec, b._prec + la)
    if not a._e or not b._e:
        return LCNumber._raw((), (), 1, prec, ctx)
    ea, eb, den = _common(a, b)
    limit = ea[0] + eb[0] + ctx.depth
    if prec is not None:
        limit = min(limit, _last_unit_below(prec, den))
    e, c, truncated = kernels.mul(ea, a._c, eb, b._c, limit, ctx.zeta, ctx.zeta == 0)
    if truncated:
        prec = _pmin(prec, Fraction(limit + 1, den))
    return LCNumber._raw(e, c, den, prec, ctx)


def _max_residual(a: LCNumber, b: LCNumber):
    """Largest coefficient gap below the common precision bound."""
    prec = _pmin(a._prec, b._prec)
    if prec is not None:
        a, b = a.with_prec(prec), b.with_prec(prec)
    diff = _add(a, b, -1)
    return max((abs(c) for c in diff._c), default=0)


def _normalized_tail(a: LCNumber):
    """Split ``a = c0 * d**lam * (1 + eps)``; returns ``(c0, lam, eps)``."""
    ctx = a.ctx
    lam = a._e[0]
    c0 = a._c[0]
    e = tuple(x - lam for x in a._e[1:])
    c = tuple(x / c0 for x in a._c[1:])
    prec = None if a._prec is None else a._prec - Fraction(lam, a._den)
    eps = LCNumber._raw(e, c, a._den, prec, ctx)
    return c0, Fraction(lam, a._den), eps, a._den


def _series_terms(eps: LCNumber, den: int, depth: int) -> int:
    """Number of powers of ``eps`` that reach into the retained window."""
    if not eps._e:
        return 0
    lead = Fraction(eps._e[0], eps._den)
    return int(Fraction(depth, den) / lead)


# ------------------------------------------------------------ public API
def lc_add(a: LCNumber, b: LCNumber) -> LCNumber:
    return _add(a, b, 1)


def lc_sub(a: LCNumber, b: LCNumber) -> LCNumber:
    return _add(a, b, -1)


def lc_mul(a: LCNumber, b: LCNumber) -> LCNumber:
    return _mul(a, b)


def lc_inv(a: LCNumber) -> LCNumber:
    """Multiplicative inverse via the geometric series of the normalized tail."""
    if not a._e:
        raise ZeroDivisionError("inverse of a number that is zero after thresholding")
    ctx = a.ctx
    c0, lam, eps, den = _normalized_tail(a)
    n = _series_terms(eps, den, ctx.depth)
    one = ctx.one
    s = one
    for _ in range(n):
        s = one - eps * s
    if eps._e:
        s = s.with_prec((n + 1) * Fraction(eps._e[0], eps._den))
    elif eps._prec is not None:
        s = s.with_prec(eps._prec)
    return s * ctx.monomial(1 / c0, -lam)


def lc_div(a: LCNumber, b: LCNumber) -> LCNumber:
    return _mul(a, lc_inv(b))


def lc_cmp(a: LCNumber, b: LCNumber) -> int:
    """Sign of ``a - b``: -1, 0 or 1."""
    diff = _add(a, b, -1)
    if not diff._e:
        return 0
    return 1 if diff._c[0] > 0 else -1


def lc_root(a: LCNumber, n: int) -> LCNumber:
    """Positive ``n``-th root, by the binomial series of the normalized tail."""
    if n < 1:
        raise ValueError("root order must be a positive integer")
    if n == 1:
        return a
    if not a._e or a._c[0] < 0:
        raise ValueError("root of a non-positive number")
    ctx = a.ctx
    c0, lam, eps, den = _normalized_tail(a)
    if ctx.exact:
        num, ok1 = gmpy2.iroot(gmpy2.mpz(c0.numerator), n)
        dnm, ok2 = gmpy2.iroot(gmpy2.mpz(c0.denominator), n)
        if not (ok1 and ok2):
            raise ValueError(f"root of {c0} is irrational; use float mode")
        r0 = mpq(num, dnm)
        alpha = mpq(1, n)
    else:
        r0 = c0 ** (1.0 / n)
        alpha = 1.0 / n
    terms = _series_terms(eps, den, ctx.depth)
    s = ctx.one
    power = ctx.one
    binom = ctx.coerce(1)
    for k in range(1, terms + 1):
        binom = binom * (alpha - (k - 1)) / k
        power = power * eps
        s = s + power * binom
    if eps._e:
        s = s.with_prec((terms + 1) * Fraction(eps._e[0], eps._den))
    elif eps._prec is not None:
        s = s.with_prec(eps._prec)
    return s * ctx.monomial(r0, lam / n)


def valuation(a: LCNumber):
    """Least exponent of the support; ``math.inf`` for zero."""
    if not a._e:
        return math.inf
    return Fraction(a._e[0], a._den)


def standard_part(a: LCNumber):
    """Real shadow of ``a``: a Fraction (exact mode), float, or +-inf."""
    if not a._e:
        if a._prec is not None and a._prec <= 0:
            raise PrecisionLoss(f"standard part unknown: value is O(d^{a._prec})")
        return Fraction(0) if a.ctx.exact else 0.0
    lead = a._e[0]
    if lead < 0:
        return math.inf if a._c[0] > 0 else -math.inf
    if lead == 0:
        return _to_user(a._c[0])
    return Fraction(0) if a.ctx.exact else 0.0


def classify(a: LCNumber) -> str:
    """One of ``zero``, ``infinitesimal``, ``appreciable``, ``infinite``."""
    if not a._e:
        return "zero"
    lead = a._e[0]
    if lead > 0:
        return "infinitesimal"
    if lead == 0:
        return "appreciable"
    return "infinite"


def monad_eq(a: LCNumber, b: LCNumber) -> bool:
    """True when ``a`` and ``b`` are infinitely close."""
    diff = _add(a, b, -1)
    return not diff._e or diff._e[0] > 0


def is_finite(a: LCNumber) -> bool:
    return not a._e or a._e[0] >= 0


def ext_add(x, y):
    """Sum on the extended reals; ``+inf + -inf`` is rejected."""
    if (x == math.inf and y == -math.inf) or (x == -math.inf and y == math.inf):
        raise ArithmeticError("+inf + -inf is undefined")
    return x + y


def as_rational(x) -> Fraction:
    if isinstance(x, _MPQ):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(x)
