import math
import random
from fractions import Fraction

import pytest

from levicivita.expr import (
    Add,
    Const,
    Div,
    DomainError,
    ExprSyntaxError,
    Pow,
    Sin,
    Sub,
    X,
    diff,
    diff_n,
    eval_real,
    is_entire,
    is_polynomial,
    parse,
    render,
)

CORPUS = [
    "sin(x)", "cos(3*x) - x", "x^3 - x", "1/(1+x^2)", "exp(2*x)", "ln(x)", "x^(1/2)",
    "exp(-x^2/2)", "sin(x)*cos(x)", "(x+1)^5/(x^2+1)", "ln(1+x^2)", "x^(-3/2)", "pi*x - e",
    "-x^2", "2^3*x", "sin(exp(x))", "x*ln(x) - x",
]


def test_parse_shapes():
    assert parse("sin(x)") == Sin(X)
    assert parse("x^3 - x") == Sub(Pow(X, 3), X)
    assert parse("1/(1+x^2)") == Div(Const(Fraction(1)), Add(Const(Fraction(1)), Pow(X, 2)))


@pytest.mark.parametrize("text", CORPUS)
def test_render_roundtrip(text):
    e = parse(text)
    assert parse(render(e)) == e


def test_diff_examples():
    assert render(diff(parse("sin(x)"))) == "cos(x)"
    assert diff(parse("x^3 - x")) == parse("3*x^2 - 1")
    assert diff(parse("exp(2*x)")) == parse("2*exp(2*x)")


@pytest.mark.parametrize("text", CORPUS)
def test_diff_matches_finite_differences(text):
    e, de = parse(text), diff(parse(text))
    rng = random.Random(text)
    for _ in range(5):
        x = rng.uniform(0.3, 2.0)
        h = 1e-6 * max(1.0, abs(x))
        fd = (eval_real(e, x + h) - eval_real(e, x - h)) / (2 * h)
        assert de is not None
        assert eval_real(de, x) == pytest.approx(fd, rel=1e-5, abs=1e-6)


def test_eval_examples():
    assert abs(eval_real(parse("sin(x)"), math.pi / 2) - 1.0) <= 1e-15
    assert eval_real(parse("x^3 - x"), 2) == 6
    with pytest.raises(DomainError):
        eval_real(parse("1/x"), 0)
    with pytest.raises(DomainError):
        eval_real(parse("ln(x)"), -1)
    with pytest.raises(DomainError):
        eval_real(parse("x^(1/2)"), -1)


@pytest.mark.parametrize("bad, offset", [("sin(", 4), ("x^x", 2), ("1 +* 2", 3), ("foo(x)", 0)])
def test_syntax_errors(bad, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(bad)
    assert info.value.offset == offset


def test_higher_derivatives_and_classes():
    assert eval_real(diff_n(parse("x^5"), 3), 2.0) == 240
    assert diff_n(parse("x^2"), 3) == Const(Fraction(0))
    assert is_polynomial(parse("(x+1)^3 - 2*x"))
    assert not is_polynomial(parse("1/x"))
    assert is_entire(parse("exp(sin(x)) + x^4"))
    assert not is_entire(parse("ln(x)")) and not is_entire(parse("1/(1+x^2)"))
