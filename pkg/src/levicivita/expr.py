"""Real expressions in one variable ``x``.

Grammar (recursive descent)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' exponent)?
    base   := number | 'x' | 'pi' | 'e' | '(' expr ')' | func '(' expr ')'
    func   := 'sin' | 'cos' | 'exp' | 'ln'
    exponent := ['-'] number | '(' expr ')'      # must be constant

Numbers are decimals or ``p/q`` rationals and are kept exact; a quotient of two
literals folds into one rational constant, so ``render`` and ``parse`` are
inverse on parsed trees.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Expr",
    "Const",
    "NamedConst",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "RealPow",
    "Exp",
    "Ln",
    "Sin",
    "Cos",
    "ExprSyntaxError",
    "DomainError",
    "parse",
    "render",
    "diff",
    "eval_real",
    "is_constant",
]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class DomainError(ValueError):
    """Evaluation left the domain of a node (division by zero, log of x <= 0, ...)."""


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return add(self, _wrap(other))

    def __radd__(self, other):
        return add(_wrap(other), self)

    def __sub__(self, other):
        return sub(self, _wrap(other))

    def __rsub__(self, other):
        return sub(_wrap(other), self)

    def __mul__(self, other):
        return mul(self, _wrap(other))

    def __rmul__(self, other):
        return mul(_wrap(other), self)

    def __truediv__(self, other):
        return div(self, _wrap(other))

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Const(Expr):
    value: Fraction

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class NamedConst(Expr):
    name: str  # 'pi' or 'e'

    def __repr__(self):
        return f"NamedConst({self.name})"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    def __repr__(self):
        return "Var"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    """Quotient; evaluation rejects a zero denominator."""

    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    """Integer power; negative powers reject a zero base."""

    base: Expr
    exponent: int


@dataclass(frozen=True)
class RealPow(Expr):
    """Non-integer constant power; defined for a positive base."""

    base: Expr
    exponent: Union[Fraction, float]


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Ln(Expr):
    """Natural log; defined for a positive argument."""

    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


X = Var()
ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))
_FUNCS = {"sin": Sin, "cos": Cos, "exp": Exp, "ln": Ln}


def _wrap(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Const(Fraction(v))
    if isinstance(v, float):
        return Const(Fraction(v))
    raise TypeError(f"cannot use {type(v).__name__} in an expression")


# ------------------------------------------------------------ simplifying constructors
def _cval(e: Expr):
    return e.value if isinstance(e, Const) else None


def neg(a: Expr) -> Expr:
    v = _cval(a)
    if v is not None:
        return Const(-v)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    va, vb = _cval(a), _cval(b)
    if va is not None and vb is not None:
        return Const(va + vb)
    if va == 0:
        return b
    if vb == 0:
        return a
    if isinstance(b, Neg):
        return sub(a, b.arg)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    va, vb = _cval(a), _cval(b)
    if va is not None and vb is not None:
        return Const(va - vb)
    if vb == 0:
        return a
    if va == 0:
        return neg(b)
    if isinstance(b, Neg):
        return add(a, b.arg)
    if a == b:
        return ZERO
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    va, vb = _cval(a), _cval(b)
    if va is not None and vb is not None:
        return Const(va * vb)
    if va == 0 or vb == 0:
        return ZERO
    if va == 1:
        return b
    if vb == 1:
        return a
    if va == -1:
        return neg(b)
    if vb == -1:
        return neg(a)
    if vb is not None:
        a, b, va, vb = b, a, vb, va
    if va is not None and isinstance(b, Mul) and _cval(b.left) is not None:
        return mul(Const(va * b.left.value), b.right)
    if isinstance(a, Neg):
        return neg(mul(a.arg, b))
    if isinstance(b, Neg):
        return neg(mul(a, b.arg))
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    va, vb = _cval(a), _cval(b)
    if vb == 0:
        return Div(a, b)  # left for evaluation to reject
    if va is not None and vb is not None:
        return Const(va / vb)
    if va == 0:
        return ZERO
    if vb == 1:
        return a
    if vb is not None:
        return mul(Const(1 / vb), a)
    return Div(a, b)


def power(base: Expr, exponent) -> Expr:
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        exponent = int(exponent)
    if isinstance(exponent, int):
        if exponent == 0:
            return ONE
        if exponent == 1:
            return base
        v = _cval(base)
        if v is not None and (v != 0 or exponent > 0):
            return Const(v**exponent)
        return Pow(base, exponent)
    return RealPow(base, exponent)


# ----------------------------------------------------------------- parser
_TOKEN = re.compile(
    r"(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()])"
)


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
        toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, value: str) -> bool:
        kind, text, _ = self.toks[self.i]
        return kind == "op" and text == value

    def expect(self, value: str):
        kind, text, pos = self.take()
        if kind != "op" or text != value:
            raise ExprSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            r = self.term()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at("*") or self.at("/"):
            op = self.take()[1]
            r = self.factor()
            if op == "*":
                e = Mul(e, r)
            elif isinstance(e, Const) and isinstance(r, Const) and r.value != 0:
                e = Const(e.value / r.value)
            else:
                e = Div(e, r)
        return e

    def factor(self) -> Expr:
        if self.at("-"):
            self.take()
            inner = self.factor()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Neg(inner)
        b = self.base()
        if self.at("^"):
            _, _, pos = self.take()
            q = self.exponent(pos)
            if isinstance(q, Fraction) and q.denominator == 1:
                return Pow(b, int(q))
            return RealPow(b, q)
        return b

    def exponent(self, pos):
        if self.at("-"):
            self.take()
            kind, text, p = self.take()
            if kind != "num":
                raise ExprSyntaxError("expected a number", p)
            return -Fraction(text)
        kind, text, p = self.peek()
        if kind == "num":
            self.take()
            return Fraction(text)
        if self.at("("):
            self.take()
            e = self.expr()
            self.expect(")")
            if not is_constant(e):
                raise ExprSyntaxError("exponent must be constant", pos)
            if _rational_const(e) is not None:
                return _rational_const(e)
            return eval_real(e, 0.0)
        raise ExprSyntaxError("expected an exponent", p)

    def base(self) -> Expr:
        kind, text, pos = self.take()
        if kind == "num":
            return Const(Fraction(text))
        if kind == "name":
            if text == "x":
                return X
            if text in ("pi", "e"):
                return NamedConst(text)
            if text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[text](arg)
            raise ExprSyntaxError(f"unknown name {text!r}", pos)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ExprSyntaxError("expected a number, 'x', a function or '('", pos)


def parse(text: str) -> Expr:
    """Parse an expression; raises ``ExprSyntaxError`` with the byte offset."""
    return _Parser(text).parse()


def _rational_const(e: Expr):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Neg):
        v = _rational_const(e.arg)
        return None if v is None else -v
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = _rational_const(e.left), _rational_const(e.right)
        if a is None or b is None:
            return None
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        return None if b == 0 else a / b
    if isinstance(e, Pow):
        v = _rational_const(e.base)
        if v is None or (v == 0 and e.exponent < 0):
            return None
        return v**e.exponent
    return None


def is_constant(e: Expr) -> bool:
    if isinstance(e, Var):
        return False
    if isinstance(e, (Const, NamedConst)):
        return True
    return all(is_constant(c) for c in children(e))


def children(e: Expr) -> tuple:
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, (Pow, RealPow)):
        return (e.base,)
    if isinstance(e, (Neg, Exp, Ln, Sin, Cos)):
        return (e.arg,)
    return ()


# ----------------------------------------------------------------- renderer
_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, RealPow: 4}


def _exp_text(q) -> str:
    if isinstance(q, int):
        return str(q) if q >= 0 else f"({q})"
    if isinstance(q, Fraction):
        return f"({q})"
    return f"({q!r})"


def render(e: Expr) -> str:
    """Text in the parser's grammar; ``parse(render(e)) == e`` for parsed trees."""
    return _render(e)


def _atomic(e: Expr) -> str:
    if isinstance(e, Const):
        v = e.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        return f"({v})"
    if isinstance(e, (Var, NamedConst, Exp, Ln, Sin, Cos)):
        return _render(e)
    return f"({_render(e)})"


def _render(e: Expr) -> str:
    if isinstance(e, Const):
        v = e.value
        return str(v) if v >= 0 else f"({v})"
    if isinstance(e, Var):
        return "x"
    if isinstance(e, NamedConst):
        return e.name
    if isinstance(e, Neg):
        return f"(-{_atomic(e.arg)})"
    if isinstance(e, (Exp, Ln, Sin, Cos)):
        return f"{type(e).__name__.lower()}({_render(e.arg)})"
    if isinstance(e, (Pow, RealPow)):
        return f"{_atomic(e.base)}^{_exp_text(e.exponent)}"
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        right = _render(e.right)
        if _PREC.get(type(e.right), 5) <= 1:
            right = f"({right})"
        return f"{_render(e.left)} {op} {right}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = _render(e.left)
        if _PREC.get(type(e.left), 5) < 2 or isinstance(e.left, Const):
            left = _atomic(e.left) if isinstance(e.left, Const) else f"({left})"
        right = _render(e.right)
        if _PREC.get(type(e.right), 5) <= 2 or isinstance(e.right, Const):
            right = _atomic(e.right) if isinstance(e.right, Const) else f"({right})"
        return f"{left} {op} {right}"
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------- calculus
def diff(e: Expr) -> Expr:
    """Symbolic derivative with respect to ``x``, lightly simplified."""
    if isinstance(e, (Const, NamedConst)):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return neg(diff(e.arg))
    if isinstance(e, Add):
        return add(diff(e.left), diff(e.right))
    if isinstance(e, Sub):
        return sub(diff(e.left), diff(e.right))
    if isinstance(e, Mul):
        return add(mul(diff(e.left), e.right), mul(e.left, diff(e.right)))
    if isinstance(e, Div):
        u, v = e.left, e.right
        du, dv = diff(u), diff(v)
        if _cval(dv) == 0:
            return div(du, v)
        return div(sub(mul(du, v), mul(u, dv)), power(v, 2))
    if isinstance(e, Pow):
        n = e.exponent
        return mul(mul(Const(Fraction(n)), power(e.base, n - 1)), diff(e.base))
    if isinstance(e, RealPow):
        p = e.exponent
        lowered = p - 1
        inner = power(e.base, lowered) if isinstance(lowered, Fraction) else RealPow(e.base, lowered)
        coef = Const(p) if isinstance(p, Fraction) else Const(Fraction(p))
        return mul(mul(coef, inner), diff(e.base))
    if isinstance(e, Exp):
        return mul(diff(e.arg), e)
    if isinstance(e, Ln):
        return div(diff(e.arg), e.arg)
    if isinstance(e, Sin):
        return mul(diff(e.arg), Cos(e.arg))
    if isinstance(e, Cos):
        return neg(mul(diff(e.arg), Sin(e.arg)))
    raise TypeError(f"unknown node {e!r}")


def diff_n(e: Expr, n: int) -> Expr:
    for _ in range(n):
        e = diff(e)
    return e


def eval_real(e: Expr, x: float) -> float:
    """Evaluate at a real point; raises ``DomainError`` outside the domain."""
    try:
        return _eval(e, float(x))
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(str(exc)) from None


def _eval(e: Expr, x: float) -> float:
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, NamedConst):
        return math.pi if e.name == "pi" else math.e
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, Add):
        return _eval(e.left, x) + _eval(e.right, x)
    if isinstance(e, Sub):
        return _eval(e.left, x) - _eval(e.right, x)
    if isinstance(e, Mul):
        return _eval(e.left, x) * _eval(e.right, x)
    if isinstance(e, Div):
        den = _eval(e.right, x)
        if den == 0:
            raise DomainError(f"division by zero at x = {x!r}")
        return _eval(e.left, x) / den
    if isinstance(e, Pow):
        b = _eval(e.base, x)
        if b == 0 and e.exponent < 0:
            raise DomainError(f"negative power of zero at x = {x!r}")
        return b**e.exponent
    if isinstance(e, RealPow):
        b = _eval(e.base, x)
        if b < 0 or (b == 0 and e.exponent < 0):
            raise DomainError(f"real power of {b!r} at x = {x!r}")
        return b ** float(e.exponent)
    if isinstance(e, Exp):
        return math.exp(_eval(e.arg, x))
    if isinstance(e, Ln):
        a = _eval(e.arg, x)
        if a <= 0:
            raise DomainError(f"log of non-positive {a!r} at x = {x!r}")
        return math.log(a)
    if isinstance(e, Sin):
        return math.sin(_eval(e.arg, x))
    if isinstance(e, Cos):
        return math.cos(_eval(e.arg, x))
    raise TypeError(f"unknown node {e!r}")


def is_entire(e: Expr) -> bool:
    """Built only from polynomials, ``exp``, ``sin`` and ``cos``."""
    if isinstance(e, (Const, NamedConst, Var)):
        return True
    if isinstance(e, (Div, Ln, RealPow)):
        return False
    if isinstance(e, Pow) and e.exponent < 0:
        return False
    return all(is_entire(c) for c in children(e))


def is_polynomial(e: Expr) -> bool:
    if isinstance(e, (Const, NamedConst, Var)):
        return True
    if isinstance(e, (Add, Sub, Mul, Neg)):
        return all(is_polynomial(c) for c in children(e))
    if isinstance(e, Pow):
        return e.exponent >= 0 and is_polynomial(e.base)
    if isinstance(e, Div):
        return is_polynomial(e.left) and is_constant(e.right)
    return False
