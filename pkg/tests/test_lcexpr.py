import math
from fractions import Fraction

import pytest

from levicivita.core import EXACT, FLOAT, lc_inv
from levicivita.lcexpr import LCExprError, evaluate, render_value

E, d = EXACT, EXACT.d


def test_examples():
    assert evaluate("st(3 + 5*d)", E) == 3
    assert evaluate("1/(1-d)", E) == lc_inv(1 - d)
    assert evaluate("lambda(d^(1/2)+d)", E) == Fraction(1, 2)


def test_operators_and_precedence():
    assert evaluate("2 + 3*d^2", E) == 2 + 3 * d * d
    assert evaluate("-d^2", E) == -(d * d)
    assert evaluate("d^1/2", E) == E.monomial(1, Fraction(1, 2))
    assert evaluate("(1+d)^3", E) == (1 + d) ** 3
    assert evaluate("d^-1 * d", E) == E.one
    assert evaluate("3/4", E) == Fraction(3, 4)


def test_functions():
    assert evaluate("root(4 + 4*d, 2)", E).coeff(1) == 1
    assert evaluate("inv(2)", E) == E.const(Fraction(1, 2))
    assert evaluate("abs(-d)", E) == d
    assert evaluate("classify(d^-2)", E) == "infinite"
    assert evaluate("st(d^-1)", E) == math.inf
    assert evaluate("lambda(0)", E) == math.inf


def test_float_context():
    assert evaluate("st(0.5 + d)", FLOAT) == 0.5


@pytest.mark.parametrize("text, offset", [("1/(1-", 5), ("2 $ 3", 2), ("foo(1)", 0), ("1/0", 1),
                                          ("root(2)", 0)])
def test_errors_have_offsets(text, offset):
    with pytest.raises(LCExprError) as info:
        evaluate(text, E)
    assert info.value.offset == offset


def test_infinite_standard_part_cannot_be_reused():
    with pytest.raises(ArithmeticError):
        evaluate("st(d^-1) + d", E)


def test_render_value():
    assert render_value(math.inf) == "+inf"
    assert render_value(3.0) == "3"
    assert render_value(Fraction(1, 2)) == "1/2"
    assert render_value(1 + d) == "1 + d"
