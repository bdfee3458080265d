import math
import random
from fractions import Fraction

import pytest

from levicivita.core import EXACT, FLOAT, standard_part
from levicivita.expr import DomainError, diff_n, eval_real, parse
from levicivita.extension import NotNearstandard, extend, extension

E, d = EXACT, EXACT.d


def test_order_two_sine_at_half_plus_d():
    got = extend(extension("sin(x)", 2), FLOAT.const(0.5) + FLOAT.d)
    s, c = math.sin(0.5), math.cos(0.5)
    assert got.coeff(0) == pytest.approx(s, abs=1e-15)
    assert got.coeff(1) == pytest.approx(c, abs=1e-15)
    assert got.coeff(2) == pytest.approx(-s / 2, abs=1e-15)
    assert len(got.terms) == 3 and got.is_exact


@pytest.mark.parametrize("text", ["sin(x)", "x^3 - x", "exp(x)*cos(x)", "1/(1+x^2)"])
@pytest.mark.parametrize("k", [0, 1, 4])
def test_real_points_give_real_values(text, k):
    f = extension(text, k)
    for r in (Fraction(-1, 3), Fraction(0), Fraction(5, 4)):
        want = eval_real(parse(text), float(r))
        for ctx in (E, FLOAT):
            got = extend(f, ctx.const(r))
            assert got.is_exact and len(got.terms) <= 1
            assert float(standard_part(got)) == pytest.approx(want, abs=1e-15)


def test_polynomial_with_infinite_order_is_exact():
    got = extend(extension("x^2"), 1 + d)
    assert got == 1 + 2 * d + d * d and got.is_exact


def test_infinite_order_entire_function_fills_window():
    got = extend(extension("exp(x)"), d)
    assert [got.coeff(n) for n in range(17)] == [Fraction(1, math.factorial(n)) for n in range(17)]
    assert got.prec == 17


def test_taylor_terms_match_symbolic_derivatives():
    rng = random.Random(3)
    for text in ["sin(x)*x", "ln(2+x)", "x^(5/2)", "exp(-x)"]:
        e = parse(text)
        r = round(rng.uniform(0.5, 1.5), 3)
        got = extend(extension(text, 5), FLOAT.const(r) + FLOAT.d)
        for i in range(6):
            want = eval_real(diff_n(e, i), r) / math.factorial(i)
            assert got.coeff(i) == pytest.approx(want, rel=1e-12, abs=1e-14)


def test_non_nearstandard_points_are_rejected():
    with pytest.raises(NotNearstandard):
        extend(extension("sin(x)", 1), E.monomial(1, -1))
    with pytest.raises(NotNearstandard):
        extend(extension("x", 1, (0, 1)), 2 + d)


def test_missing_differentiability_is_reported():
    with pytest.raises(DomainError):
        extend(extension("ln(x)", 3, (0, math.inf)), d)
    with pytest.raises(ValueError):
        extension("ln(x)")


def test_callable():
    f = extension("x^3 - x", 5)
    assert f(E.const(Fraction(1, 2))) == E.const(Fraction(-3, 8))
