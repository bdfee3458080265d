import math
from fractions import Fraction

import pytest

from levicivita.expr import diff_n, eval_real, parse
from levicivita.taylor import polynomial_degree, taylor_coefficients

FUNCS = ["sin(x)", "cos(2*x)", "exp(x)*x^2", "ln(1+x)", "1/(2+x)", "x^(3/2)", "(1+x)^(-1/3)",
         "sin(x)/exp(x)", "exp(sin(x))", "x^4 - 3*x + 1"]


@pytest.mark.parametrize("text", FUNCS)
def test_coefficients_match_symbolic_derivatives(text):
    e = parse(text)
    r = 0.7
    coeffs = taylor_coefficients(e, r, 6)
    for i, c in enumerate(coeffs):
        want = eval_real(diff_n(e, i), r) / math.factorial(i)
        assert abs(c - want) <= 1e-12 * max(1.0, abs(want))


def test_rational_points_stay_exact():
    coeffs = taylor_coefficients(parse("exp(x)"), Fraction(0), 5)
    assert coeffs == [Fraction(1, math.factorial(i)) for i in range(6)]
    assert taylor_coefficients(parse("sin(x)"), Fraction(0), 3) == [0, 1, 0, Fraction(-1, 6)]
    assert taylor_coefficients(parse("ln(x)"), Fraction(1), 3) == [0, 1, Fraction(-1, 2), Fraction(1, 3)]
    assert taylor_coefficients(parse("x^3 - x"), Fraction(1, 2), 4) == [
        Fraction(-3, 8), Fraction(-1, 4), Fraction(3, 2), 1, 0]


def test_polynomial_degree():
    assert polynomial_degree(parse("x^3 - x")) == 3
    assert polynomial_degree(parse("(x+1)^2*(x-1)")) == 3
    assert polynomial_degree(parse("5")) == 0
    assert polynomial_degree(parse("sin(x)")) is None
