import math

import pytest

from levicivita import quadrature
from levicivita.expr import parse
from levicivita.quadrature import QuadratureError, gk15, quad, quad_fn


def test_rule_weights():
    assert 2 * sum(quadrature._WGK[:-1]) + quadrature._WGK[-1] == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 22))
def test_kronrod_is_exact_for_low_degree(n):
    value, _ = gk15(lambda x: x ** n, -1.0, 1.0)
    want = 0.0 if n % 2 else 2.0 / (n + 1)
    assert value == pytest.approx(want, abs=1e-14)


def test_reference_values():
    assert abs(quad(parse("sin(x)"), 0, math.pi, 1e-10) - 2.0) <= 1e-10
    assert abs(quad(parse("x^3 - x"), 0, 1, 1e-12) + 0.25) <= 1e-12
    assert quad(parse("7"), -2, 3) == pytest.approx(35.0, abs=1e-13)
    assert quad(parse("1/x"), 1, 10) == pytest.approx(math.log(10), abs=1e-10)


def test_interval_order():
    assert quad(parse("x"), 2, 2) == 0.0
    with pytest.raises(ValueError):
        quad(parse("x"), 1, 0)


def test_endpoint_singularity_is_integrable():
    assert quad(parse("x^(-1/2)"), 0, 1, 1e-8) == pytest.approx(2.0, abs=1e-7)


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureError):
        quad_fn(lambda x: math.sin(1 / x) if x else 0.0, 0, 1, tol=1e-14, budget=300)


def test_result_reports_evaluations():
    r = quad_fn(math.exp, 0, 1)
    assert r.value == pytest.approx(math.e - 1, abs=1e-12) and r.evaluations % 15 == 0
