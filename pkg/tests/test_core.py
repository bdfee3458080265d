import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levicivita.core import (
    EXACT,
    FLOAT,
    ConfigMismatch,
    LCContext,
    LCNumber,
    PrecisionLoss,
    classify,
    ext_add,
    lc_cmp,
    lc_inv,
    lc_root,
    monad_eq,
    standard_part,
    valuation,
)

E = EXACT
d = E.d


def lc(text, ctx=E):
    return ctx.parse(text)


# ---------------------------------------------------------------- examples
def test_add_examples():
    assert (1 + d) + (1 - d) == E.const(2)
    got = lc("3 + d^(1/2)") + lc("2 + d")
    assert got.coeff(0) == 5 and got.coeff(Fraction(1, 2)) == 1 and got.coeff(1) == 1
    assert len(got.terms) == 3


def test_mul_examples():
    assert (1 + d) * (1 - d) == 1 - d * d
    h = E.monomial(1, Fraction(1, 2))
    assert h * h == d
    assert (1 + d + d * d) * (1 - d) == 1 - d ** 3


def test_inverse_examples():
    g = lc_inv(1 - d)
    assert all(g.coeff(n) == 1 for n in range(17))
    assert g.prec == 17
    assert ((1 - d) * g).same_within_precision(E.one)
    assert lc_inv(E.const(2)) == E.const(Fraction(1, 2))
    assert lc_inv(d) == E.monomial(1, -1)
    with pytest.raises(ZeroDivisionError):
        lc_inv(E.zero)


def test_compare_examples():
    assert lc_cmp(d, d * d) == 1
    assert lc_cmp(3 + d, E.const(3)) == 1
    assert lc_cmp(1 - d, E.one) == -1
    assert d > 0 > -d and d < Fraction(1, 10**9)
    assert E.monomial(1, -1) > 10**12


def test_valuation_examples():
    assert valuation(lc("d^(1/2) + d")) == Fraction(1, 2)
    assert valuation(E.const(5)) == 0
    assert valuation(E.zero) == math.inf


def test_standard_part_examples():
    assert standard_part(3 + 5 * d) == 3
    assert standard_part(E.monomial(1, -1)) == math.inf
    assert standard_part(-E.monomial(2, -1)) == -math.inf
    x, y = 1 + d, 2 + d
    assert standard_part(x * y) == standard_part(x) * standard_part(y) == 2
    assert isinstance(standard_part(E.const(Fraction(1, 3))), Fraction)


def test_classify_and_monad():
    assert classify(d) == "infinitesimal"
    assert classify(7 + d) == "appreciable"
    assert classify(E.monomial(1, -2)) == "infinite"
    assert classify(E.zero) == "zero"
    assert monad_eq(E.one, 1 + d)
    assert not monad_eq(E.one, E.const(2))
    assert monad_eq(d, d * d)


def test_root_examples():
    assert lc_root(d * d, 2) == d
    assert lc_root(E.const(4), 2) == E.const(2)
    r = lc_root(1 + d, 2)
    assert r.coeff(1) == Fraction(1, 2) and r.coeff(2) == Fraction(-1, 8)
    assert (r * r).same_within_precision(1 + d)
    for bad in (E.const(-8), -(1 + d), E.zero):
        with pytest.raises(ValueError):
            lc_root(bad, 3)


def test_exact_root_needs_perfect_leading_coefficient():
    with pytest.raises(ValueError):
        lc_root(E.const(2), 2)
    assert abs(standard_part(lc_root(FLOAT.const(2), 2)) - math.sqrt(2)) < 1e-15


def test_ext_add_conventions():
    assert ext_add(Fraction(1), math.inf) == math.inf
    assert ext_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    with pytest.raises(ArithmeticError):
        ext_add(math.inf, -math.inf)


# ------------------------------------------------------------- truncation
def test_window_truncation_records_precision():
    x = E.monomial(1, -2) + E.monomial(1, 20)
    assert x.prec is not None and x.prec <= 20
    assert x.terms == ((Fraction(-2), Fraction(1)),)


def test_precision_is_carried_through_arithmetic():
    a = lc("1 + d + O(d^3)")
    assert (a * a).prec == 3
    assert (a + d ** 5).prec == 3
    assert (a - a).is_zero() and not (a - a).is_exact


def test_float_zeta_drops_tiny_coefficients():
    ctx = LCContext(depth=8, zeta=1e-6)
    x = ctx.const(1.0) + ctx.monomial(1e-9, 1)
    assert len(x.terms) == 1


def test_mixed_contexts_are_rejected():
    other = LCContext(depth=8, zeta=0)
    with pytest.raises(ConfigMismatch):
        E.one + other.one
    assert E.one.to_context(other) + other.one == other.const(2)


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        LCContext(depth=0)


def test_rendering_roundtrip():
    for text in ["0", "1", "-2*d^(-1/2) + 1 + O(d^3)", "3/4*d + 5*d^(7/3)"]:
        x = lc(text)
        assert lc(str(x)) == x
        assert str(lc(str(x))) == str(x)


def test_precision_loss_is_an_arithmetic_error():
    assert issubclass(PrecisionLoss, ArithmeticError)


# -------------------------------------------------------------- properties
exponents = st.fractions(min_value=-3, max_value=6, max_denominator=3)
coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=6).filter(lambda c: c != 0)
numbers = st.lists(st.tuples(exponents, coeffs), max_size=5).map(lambda ts: LCNumber(ts, E))
finite = st.lists(st.tuples(exponents.filter(lambda q: q >= 0), coeffs), max_size=5).map(
    lambda ts: LCNumber(ts, E))


@settings(max_examples=200, deadline=None)
@given(numbers, numbers, numbers)
def test_ring_laws(a, b, c):
    assert ((a + b) + c).same_within_precision(a + (b + c))
    assert (a * b).same_within_precision(b * a)
    assert ((a * b) * c).same_within_precision(a * (b * c))
    assert (a * (b + c)).same_within_precision(a * b + a * c)


@settings(max_examples=200, deadline=None)
@given(numbers)
def test_inverse_law(a):
    if a.is_zero():
        return
    p = a * lc_inv(a)
    assert p.same_within_precision(E.one)
    assert p.prec is None or p.prec > 0


@settings(max_examples=200, deadline=None)
@given(finite, finite)
def test_standard_part_is_a_homomorphism(x, y):
    assert standard_part(x + y) == standard_part(x) + standard_part(y)
    assert standard_part(x * y) == standard_part(x) * standard_part(y)


@settings(max_examples=200, deadline=None)
@given(numbers, numbers)
def test_order_is_total_and_compatible(a, b):
    c = lc_cmp(a, b)
    assert c == -lc_cmp(b, a)
    assert lc_cmp(a - b, E.zero) == c


@settings(max_examples=100, deadline=None)
@given(numbers, numbers)
def test_valuation_of_product(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert valuation(a * b) == valuation(a) + valuation(b)
