"""Taylor-mode jets: normalized derivatives ``f^(i)(r)/i!`` of an expression.

A jet is a list ``[u_0, ..., u_K]`` of Taylor coefficients.  Arithmetic on
jets follows the usual recurrences, so one pass over the tree yields every
coefficient up to order ``K``.  Coefficients stay Fractions for a rational point as
long as no node forces an irrational value; ``exp``, ``sin``, ``cos`` at 0 and
``ln`` or real powers at 1 keep them exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .expr import (
    Add,
    Const,
    Cos,
    Div,
    DomainError,
    Exp,
    Expr,
    Ln,
    Mul,
    NamedConst,
    Neg,
    Pow,
    RealPow,
    Sin,
    Sub,
    Var,
)

__all__ = ["taylor_coefficients", "polynomial_degree"]


def polynomial_degree(e: Expr):
    """Upper bound on the degree of a polynomial tree, None otherwise."""
    if isinstance(e, (Const, NamedConst)):
        return 0
    if isinstance(e, Var):
        return 1
    if isinstance(e, Neg):
        return polynomial_degree(e.arg)
    if isinstance(e, (Add, Sub, Mul)):
        a, b = polynomial_degree(e.left), polynomial_degree(e.right)
        if a is None or b is None:
            return None
        return a + b if isinstance(e, Mul) else max(a, b)
    if isinstance(e, Div):
        a, b = polynomial_degree(e.left), polynomial_degree(e.right)
        return a if b == 0 and a is not None else None
    if isinstance(e, Pow) and e.exponent >= 0:
        a = polynomial_degree(e.base)
        return None if a is None else a * e.exponent
    return None


def taylor_coefficients(e: Expr, r, order: int) -> list:
    """``[f(r), f'(r), f''(r)/2, ...]`` up to ``order``.

    Raises ``DomainError`` when ``f`` is not ``order`` times differentiable at ``r``.
    """
    if isinstance(r, Fraction):
        one, zero = Fraction(1), Fraction(0)
    else:
        r = float(r)
        one, zero = 1.0, 0.0
    return _Jets(order, one, zero).run(e, r)


class _Jets:
    def __init__(self, order: int, one, zero):
        self.n = order + 1
        self.one = one
        self.zero = zero

    def const(self, v):
        return [v] + [self.zero] * (self.n - 1)

    def run(self, e: Expr, r):
        if isinstance(e, Const):
            v = e.value if isinstance(self.one, Fraction) else float(e.value)
            return self.const(v)
        if isinstance(e, NamedConst):
            return self.const(math.pi if e.name == "pi" else math.e)
        if isinstance(e, Var):
            out = self.const(r)
            if self.n > 1:
                out[1] = self.one
            return out
        if isinstance(e, Neg):
            return [-a for a in self.run(e.arg, r)]
        if isinstance(e, (Add, Sub)):
            a, b = self.run(e.left, r), self.run(e.right, r)
            if isinstance(e, Add):
                return [x + y for x, y in zip(a, b)]
            return [x - y for x, y in zip(a, b)]
        if isinstance(e, Mul):
            return self.mul(self.run(e.left, r), self.run(e.right, r))
        if isinstance(e, Div):
            return self.div(self.run(e.left, r), self.run(e.right, r))
        if isinstance(e, Pow):
            u = self.run(e.base, r)
            p = e.exponent
            if p < 0:
                u = self.div(self.const(self.one), u)
                p = -p
            return self.ipow(u, p)
        if isinstance(e, RealPow):
            return self.rpow(self.run(e.base, r), e.exponent)
        if isinstance(e, Exp):
            return self.exp(self.run(e.arg, r))
        if isinstance(e, Ln):
            return self.ln(self.run(e.arg, r))
        if isinstance(e, (Sin, Cos)):
            s, c = self.sincos(self.run(e.arg, r))
            return s if isinstance(e, Sin) else c
        raise TypeError(f"unknown node {e!r}")

    def mul(self, a, b):
        return [sum((a[k] * b[j - k] for k in range(j + 1)), self.zero) for j in range(self.n)]

    def div(self, a, b):
        b0 = b[0]
        if b0 == 0:
            raise DomainError("division by zero")
        w = []
        for j in range(self.n):
            s = a[j] - sum((w[k] * b[j - k] for k in range(j)), self.zero)
            w.append(s / b0)
        return w

    def ipow(self, u, p):
        out = self.const(self.one)
        while p:
            if p & 1:
                out = self.mul(out, u)
            p >>= 1
            if p:
                u = self.mul(u, u)
        return out

    def _exact(self, u) -> bool:
        return isinstance(self.one, Fraction) and all(isinstance(x, Fraction) for x in u)

    def rpow(self, u, p):
        if isinstance(p, Fraction) and self._exact(u) and u[0] == 1:
            w = [self.one]
            for j in range(1, self.n):
                s = sum(((p + 1) * k - j) * u[k] * w[j - k] for k in range(1, j + 1))
                w.append(s / j)
            return w
        p = float(p)
        u0 = float(u[0])
        if u0 < 0 or (u0 == 0 and p < 0):
            raise DomainError(f"real power of {u0!r}")
        if u0 == 0:
            if self.n == 1:
                return [0.0]
            raise DomainError("real power is not differentiable at 0")
        u = [float(x) for x in u]
        w = [u0**p]
        for j in range(1, self.n):
            s = sum(((p + 1) * k - j) * u[k] * w[j - k] for k in range(1, j + 1))
            w.append(s / (j * u0))
        return w

    def exp(self, u):
        if self._exact(u) and u[0] == 0:
            w = [self.one]
        else:
            u = [float(x) for x in u]
            w = [math.exp(u[0])]
        for j in range(1, self.n):
            w.append(sum(k * u[k] * w[j - k] for k in range(1, j + 1)) / j)
        return w

    def ln(self, u):
        if self._exact(u) and u[0] == 1:
            w = [self.zero]
        else:
            u = [float(x) for x in u]
            if u[0] <= 0:
                raise DomainError(f"log of non-positive {u[0]!r}")
            w = [math.log(u[0])]
        u0 = u[0]
        for j in range(1, self.n):
            s = u[j] - sum((k * w[k] * u[j - k] for k in range(1, j)), self.zero) / j
            w.append(s / u0)
        return w

    def sincos(self, u):
        if self._exact(u) and u[0] == 0:
            s, c = [self.zero], [self.one]
        else:
            u = [float(x) for x in u]
            s = [math.sin(u[0])]
            c = [math.cos(u[0])]
        for j in range(1, self.n):
            s.append(sum(k * u[k] * c[j - k] for k in range(1, j + 1)) / j)
            c.append(-sum(k * u[k] * s[j - k] for k in range(1, j + 1)) / j)
        return s, c
