import math
import random
from fractions import Fraction

import pytest

from levicivita.core import EXACT, FLOAT, PrecisionLoss, lc_inv, standard_part
from levicivita.expr import parse
from levicivita.quadrature import quad
from levicivita.simple import (
    IntervalLC,
    OutsideInterval,
    PiecewiseFn,
    PowerSeriesFn,
    SeriesNotStable,
    from_expr,
    polynomial,
    ps_add,
    ps_antiderivative,
    ps_derivative,
    ps_eval,
    ps_integral,
    ps_mul,
)

E, d = EXACT, EXACT.d


def closed(a, b, ctx=E):
    return IntervalLC.closed(a, b, ctx)


def geometric(hi=Fraction(1, 2)):
    return PowerSeriesFn(closed(0, hi), E.zero, generator=lambda n: E.one)


# ------------------------------------------------------------- intervals
def test_interval_basics():
    iv = IntervalLC(E.zero, E.one, False, True)
    assert not iv.contains(E.zero) and iv.contains(E.zero, closure=True)
    assert iv.contains(d) and iv.contains(E.one)
    assert str(iv.translate(d)) == "(d, 1 + d]"
    assert str(closed(0, 1).scale(-d)) == "[-d, 0]"
    with pytest.raises(ValueError):
        IntervalLC(E.one, E.zero)
    with pytest.raises(ValueError):
        IntervalLC(E.one, E.one, False, True)


def test_truncated_endpoints_that_collapse_raise():
    lo = E.parse("1 + O(d^3)")
    with pytest.raises(PrecisionLoss):
        IntervalLC(lo, lo + d ** 4)


def test_interval_json_roundtrip():
    iv = IntervalLC(E.parse("1/2 + d"), E.parse("2 - d^(1/2)"), True, False)
    assert str(IntervalLC.from_json(iv.to_json(), E)) == str(iv)


# ----------------------------------------------------------- power series
def test_geometric_series_matches_inverse():
    assert ps_eval(geometric(), d).same_within_precision(lc_inv(1 - d))


def test_constant_series():
    f = polynomial([Fraction(7, 3)], closed(-5, 5))
    assert ps_eval(f, E.parse("4 + d")) == E.const(Fraction(7, 3))


def test_exponential_series_at_one():
    f = PowerSeriesFn(closed(0, 2, FLOAT), FLOAT.zero,
                      generator=lambda n: FLOAT.const(1 / math.factorial(n)))
    assert abs(standard_part(ps_eval(f, FLOAT.one)) - math.e) <= 1e-12


def test_exact_series_at_appreciable_point_does_not_settle():
    f = PowerSeriesFn(closed(0, 2), E.zero, generator=lambda n: E.const(Fraction(1, math.factorial(n))))
    with pytest.raises(SeriesNotStable):
        ps_eval(f, E.one)


def test_evaluation_outside_interval():
    with pytest.raises(OutsideInterval):
        ps_eval(polynomial([1], closed(0, 1)), E.const(2))


def test_derivative_and_antiderivative():
    I = closed(0, 2)
    ones = polynomial([1, 1, 1, 1], I)
    assert [c.coeff(0) for c in ps_derivative(ones).coeffs] == [1, 2, 3]
    assert ps_derivative(polynomial([5], I)).coeffs == ()
    assert [c.coeff(0) for c in ps_antiderivative(polynomial([1], I)).coeffs] == [0, 1]
    assert [c.coeff(0) for c in ps_antiderivative(polynomial([0, 2], I)).coeffs] == [0, 0, 1]
    f = polynomial([3, -1, Fraction(1, 2), 4], I)
    back = ps_derivative(ps_antiderivative(f))
    assert all(a == b for a, b in zip(back.coeffs, f.coeffs))


def test_antiderivative_of_exponential_series():
    f = PowerSeriesFn(closed(0, 1), E.zero, generator=lambda n: E.const(Fraction(1, math.factorial(n))))
    F = ps_antiderivative(f)
    assert [F.coefficient(n).coeff(0) for n in range(6)] == [0] + [Fraction(1, math.factorial(n))
                                                               for n in range(1, 6)]


def test_integral_examples():
    assert ps_integral(polynomial([1], closed(0, 2)), IntervalLC(E.zero, 1 + d)) == 1 + d
    assert ps_integral(polynomial([0, 0, 1], closed(0, 1)), closed(0, 1)) == E.const(Fraction(1, 3))
    got = ps_integral(geometric(), IntervalLC(E.zero, d))
    assert all(got.coeff(n) == Fraction(1, n) for n in range(1, 17))


def test_series_algebra():
    I = closed(-1, 1)
    p, q = polynomial([1, 1], I), polynomial([1, -1], I)
    assert ps_eval(ps_mul(p, q), d) == 1 - d * d
    assert ps_eval(ps_add(p, q), E.const(Fraction(1, 3))) == E.const(2)


# --------------------------------------------------------- piecewise
def test_piecewise_evaluation_and_json():
    a, b = closed(0, 1), IntervalLC(E.one, E.const(2), False, True)
    f = PiecewiseFn(((a, polynomial([1], a)), (b, polynomial([0, 1], b, 1))))
    assert f(E.const(Fraction(1, 2))) == E.one
    assert f(1 + d) == d
    assert f(E.const(3)) == E.zero
    g = PiecewiseFn.from_json(f.to_json(), E)
    assert g.to_json() == f.to_json() and g(1 + d) == d


def test_overlapping_pieces_are_rejected():
    a, b = closed(0, 2), closed(1, 3)
    with pytest.raises(ValueError):
        PiecewiseFn(((a, polynomial([1], a)), (b, polynomial([1], b))))


def test_from_expr_polynomial_is_exact():
    f = from_expr("x^3 - x", closed(0, 2))
    assert ps_eval(f, E.const(Fraction(1, 2))) == E.const(Fraction(-3, 8))


@pytest.mark.parametrize("text", ["sin(x)", "exp(-x^2)", "1/(1+x)", "cos(3*x) + x"])
def test_piecewise_taylor_integral_matches_quadrature(text):
    # 8 local Taylor pieces on [0, 2], integrated termwise, against adaptive quadrature
    ctx = FLOAT
    cuts = [Fraction(i, 4) for i in range(9)]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        iv = IntervalLC.closed(a, b, ctx)
        total += standard_part(ps_integral(from_expr(text, iv), iv))
    assert total == pytest.approx(quad(parse(text), 0, 2, 1e-13), abs=1e-10)


def test_random_polynomial_integrals_match_quadrature():
    rng = random.Random(4)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 6))]
        a = Fraction(rng.randint(-8, 0), 2)
        b = a + Fraction(rng.randint(1, 8), 2)
        iv = closed(a, b)
        exact = ps_integral(polynomial(coeffs, iv, a), iv)
        text = " + ".join(f"({c})*(x - ({a}))^{i}" for i, c in enumerate(coeffs))
        assert float(standard_part(exact)) == pytest.approx(quad(parse(text), float(a), float(b)), abs=1e-9)
