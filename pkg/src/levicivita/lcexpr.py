"""Arithmetic expressions over LC numbers, as accepted by ``levicivita eval``.

Operands are numbers (``3``, ``0.5``, ``3/4``) and the infinitesimal ``d``;
operators ``+ - * / ^`` with the usual precedence.  An exponent written
``p/q`` after ``^`` is one rational (``d^1/2`` is ``d^(1/2)``), matching the
text format.  Functions: ``st``, ``lambda``, ``inv``, ``root(x, n)``,
``abs``, ``classify``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .core import LCContext, LCNumber, classify, lc_inv, lc_root, standard_part, valuation

__all__ = ["LCExprError", "evaluate", "render_value"]

_TOKEN = re.compile(
    r"(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),])"
)


class LCExprError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def _tokens(text):
    out, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise LCExprError(f"unexpected character {text[pos]!r}", pos)
        out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _scalar(v, ctx: LCContext):
    """Lift a real result (from ``st`` or ``lambda``) back into the field when needed."""
    if isinstance(v, LCNumber):
        return v
    if isinstance(v, float) and math.isinf(v):
        raise ArithmeticError("infinite standard part cannot re-enter arithmetic")
    return ctx.const(v)


class _Eval:
    def __init__(self, text: str, ctx: LCContext):
        self.toks = _tokens(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, op):
        kind, text, _ = self.peek()
        return kind == "op" and text == op

    def expect(self, op):
        kind, text, pos = self.take()
        if kind != "op" or text != op:
            raise LCExprError(f"expected {op!r}", pos)

    def run(self):
        v = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise LCExprError(f"unexpected {text!r}", pos)
        return v

    def expr(self):
        v = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            w = self.term()
            v = _binary(v, w, op, self.ctx)
        return v

    def term(self):
        v = self.unary()
        while self.at("*") or self.at("/"):
            _, op, pos = self.take()
            w = self.unary()
            try:
                v = _binary(v, w, op, self.ctx)
            except ZeroDivisionError:
                raise LCExprError("division by zero", pos) from None
        return v

    def unary(self):
        if self.at("-"):
            self.take()
            return _neg(self.unary(), self.ctx)
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.at("^"):
            _, _, pos = self.take()
            q = self.exponent()
            x = _scalar(v, self.ctx)
            try:
                if q.denominator == 1:
                    return x ** int(q)
                return lc_root(x, q.denominator) ** q.numerator
            except (ValueError, ZeroDivisionError) as exc:
                raise LCExprError(str(exc), pos) from None
        return v

    def exponent(self) -> Fraction:
        if self.at("("):
            _, _, pos = self.take()
            v = self.expr()
            self.expect(")")
            if isinstance(v, LCNumber):
                if not v.is_exact or any(q != 0 for q, _ in v.terms):
                    raise LCExprError("exponent must be a real constant", pos)
                v = standard_part(v)
            return Fraction(v)
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        kind, text, pos = self.take()
        if kind != "num":
            raise LCExprError("expected an exponent", pos)
        q = Fraction(text)
        if self.at("/") and self.toks[self.i + 1][0] == "num":
            self.take()
            q /= Fraction(self.take()[1])
        return sign * q

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return self.ctx.const(Fraction(text) if self.ctx.exact else float(text))
        if kind == "op" and text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "name":
            if text == "d":
                return self.ctx.d
            if text in _FUNCS:
                self.expect("(")
                args = [self.expr()]
                while self.at(","):
                    self.take()
                    args.append(self.expr())
                self.expect(")")
                try:
                    return _FUNCS[text](self.ctx, *args)
                except TypeError:
                    raise LCExprError(f"wrong number of arguments to {text}", pos) from None
                except (ValueError, ArithmeticError) as exc:
                    raise LCExprError(str(exc), pos) from None
            raise LCExprError(f"unknown name {text!r}", pos)
        raise LCExprError("expected a number, 'd', a function or '('", pos)


def _neg(v, ctx):
    if isinstance(v, LCNumber):
        return -v
    return -v


def _binary(v, w, op, ctx):
    if not isinstance(v, LCNumber) and not isinstance(w, LCNumber):
        if op == "+":
            return v + w
        if op == "-":
            return v - w
        if op == "*":
            return v * w
        return Fraction(v) / Fraction(w) if ctx.exact else v / w
    v, w = _scalar(v, ctx), _scalar(w, ctx)
    if op == "+":
        return v + w
    if op == "-":
        return v - w
    if op == "*":
        return v * w
    return v / w


def _root(ctx, x, n):
    n = standard_part(n) if isinstance(n, LCNumber) else n
    if Fraction(n).denominator != 1:
        raise ValueError("root order must be an integer")
    return lc_root(_scalar(x, ctx), int(n))


_FUNCS = {
    "st": lambda ctx, x: standard_part(_scalar(x, ctx)),
    "lambda": lambda ctx, x: valuation(_scalar(x, ctx)),
    "inv": lambda ctx, x: lc_inv(_scalar(x, ctx)),
    "root": _root,
    "abs": lambda ctx, x: abs(x),
    "classify": lambda ctx, x: classify(_scalar(x, ctx)),
}


def evaluate(text: str, ctx: LCContext):
    """Value of an LC expression: an LCNumber, a real, ``inf``, or a class name."""
    return _Eval(text, ctx).run()


def render_value(v) -> str:
    if isinstance(v, LCNumber):
        return str(v)
    if isinstance(v, float) and math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    if isinstance(v, Fraction):
        return str(v)
    return format(v, ".17g") if isinstance(v, float) else str(v)
