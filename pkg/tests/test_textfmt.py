from fractions import Fraction

import pytest

from levicivita.core import EXACT, FLOAT
from levicivita.textfmt import LCSyntaxError, format_exponent, format_lc, parse_lc


@pytest.mark.parametrize("text", ["0", "d", "-d", "1/3", "2 - d^(1/2) + 7/5*d^3", "d^(-2) + O(d)"])
def test_roundtrip(text):
    x = parse_lc(text, EXACT)
    assert parse_lc(format_lc(x), EXACT) == x


def test_terms_are_sorted_and_merged():
    x = parse_lc("d + 1 + d", EXACT)
    assert x.terms == ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(2)))


def test_big_o_sets_precision():
    x = parse_lc("1 + d + O(d^(5/2))", EXACT)
    assert x.prec == Fraction(5, 2)
    assert "O(d^(5/2))" in format_lc(x)


def test_float_context_parses_decimals():
    x = parse_lc("0.25 + 1e-3*d", FLOAT)
    assert x.coeff(0) == 0.25 and x.coeff(1) == pytest.approx(1e-3)


@pytest.mark.parametrize("bad, offset", [("1 +", 3), ("d^", 2), ("2**d", 2)])
def test_syntax_errors_carry_offsets(bad, offset):
    with pytest.raises(LCSyntaxError) as info:
        parse_lc(bad, EXACT)
    assert info.value.offset == offset


def test_exponent_format():
    assert format_exponent(Fraction(3)) == "3"
    assert format_exponent(Fraction(-1, 2)) == "(-1/2)"
