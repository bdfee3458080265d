"""Text format for Levi-Civita numbers.

A number is written as a signed sum of terms ``c*d^q``; exponents are
rationals ``p/q`` (parenthesised when negative or fractional) and a trailing
``O(d^p)`` records the precision bound.  Examples::

    1 - d^2
    3/4*d^(-1) + 2 + d^(1/2) + O(d^17)

Exact-mode values round-trip exactly; float coefficients are written with
``repr`` and round-trip bit-for-bit as well.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import LCContext, LCNumber

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(?P<op>[-+*/^()])|(?P<name>[A-Za-z]+))"
)


class LCSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LCSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Reader:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, value):
        if self.toks[self.i][1] == value and self.toks[self.i][0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            raise LCSyntaxError(f"expected {value!r}", pos)

    def number(self) -> Fraction:
        kind, text, pos = self.take()
        if kind != "num":
            raise LCSyntaxError("expected a number", pos)
        return Fraction(text)


def _rational(r: _Reader) -> Fraction:
    sign = 1
    if r.accept("-"):
        sign = -1
    else:
        r.accept("+")
    q = r.number()
    if r.accept("/"):
        q = q / r.number()
    return sign * q


def _exponent(r: _Reader) -> Fraction:
    if r.accept("("):
        q = _rational(r)
        r.expect(")")
        return q
    return _rational(r)


def _dpart(r: _Reader) -> Fraction:
    kind, text, pos = r.take()
    if kind != "name" or text != "d":
        raise LCSyntaxError("expected 'd'", pos)
    if r.accept("^"):
        return _exponent(r)
    return Fraction(1)


def parse_lc(text: str, ctx: LCContext) -> LCNumber:
    """Parse the text format into a number under ``ctx``."""
    r = _Reader(text)
    terms = []
    prec = None
    sign = 1
    if r.accept("-"):
        sign = -1
    else:
        r.accept("+")
    while True:
        kind, tok, pos = r.peek()
        if kind == "name" and tok == "O":
            r.take()
            r.expect("(")
            p = _dpart(r)
            r.expect(")")
            prec = p if prec is None else min(prec, p)
        elif kind == "num":
            c = r.number()
            if r.accept("/"):
                c = c / r.number()
            q = Fraction(0)
            if r.accept("*"):
                q = _dpart(r)
            terms.append((q, sign * c))
        elif kind == "name" and tok == "d":
            terms.append((_dpart(r), Fraction(sign)))
        else:
            raise LCSyntaxError("expected a term", pos)
        kind, tok, pos = r.peek()
        if kind == "end":
            break
        if tok == "+":
            sign = 1
        elif tok == "-":
            sign = -1
        else:
            raise LCSyntaxError(f"unexpected {tok!r}", pos)
        r.take()
    return LCNumber(terms, ctx, prec)


def format_exponent(q: Fraction) -> str:
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    return f"({q})"


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return repr(float(c))


def format_lc(x: LCNumber) -> str:
    parts = []
    for q, c in x.terms:
        neg = c < 0
        mag = -c if neg else c
        if q == 0:
            body = _format_coeff(mag)
        else:
            dp = "d" if q == 1 else f"d^{format_exponent(q)}"
            body = dp if mag == 1 else f"{_format_coeff(mag)}*{dp}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    if x.prec is not None:
        tail = f"O(d^{format_exponent(x.prec)})"
        parts.append(f"+ {tail}" if parts else tail)
    return " ".join(parts) if parts else "0"
