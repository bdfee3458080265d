import math
import random
from fractions import Fraction

import pytest

from levicivita.core import EXACT, FLOAT, lc_inv, lc_root, standard_part
from levicivita.measure import (
    MeasurableSet,
    OverlapError,
    RealInterval,
    RealSet,
    RectangleND,
    TailCertificate,
    csv_rows,
    m_measure,
    mL_measure,
    rect_measure,
    scale,
    shadow,
    st_preimage_sandwich,
    translate,
)
from levicivita.randgen import measurable_set, real_set
from levicivita.simple import IntervalLC

E, d = EXACT, EXACT.d
inf_d = EXACT.monomial(1, -1)


def S(*pairs):
    return MeasurableSet.of(*pairs, ctx=E)


def test_m_measure_examples():
    assert m_measure(S((0, "1+d"))) == 1 + d
    assert m_measure(S((0, "d"), (1, "1 + d^2"))) == d + d * d
    assert m_measure(S((0, 1), (2, 3))) == E.const(2)


def test_mL_measure_examples():
    assert mL_measure(S((0, "1+d"))) == 1
    assert mL_measure(S((0, "d"))) == 0
    assert mL_measure(S((0, "d^-1"))) == math.inf
    assert mL_measure(MeasurableSet()) == 0


def test_tail_certificate_limits_precision():
    A = MeasurableSet(S((0, 1)).intervals, TailCertificate(Fraction(3), "tail"))
    m = m_measure(A)
    assert m.prec == 3 and standard_part(m) == 1 == mL_measure(A)
    with pytest.raises(ValueError):
        TailCertificate(Fraction(0), "not infinitesimal")


def test_translation_examples():
    A = S((0, 1))
    B = translate(A, d)
    assert str(B) == "[d, 1 + d]" and mL_measure(B) == 1
    assert str(translate(A, E.zero)) == str(A)
    assert mL_measure(translate(S((0, 1), (2, 3)), E.const(-5))) == 2


def test_scaling_examples():
    image, report = scale(S((0, 1)), 2 + d)
    assert mL_measure(image) == 2 and report["holds"]
    image, report = scale(S((0, 1), (3, 5)), d)
    assert mL_measure(image) == 0 and report["holds"]
    image, _ = scale(S((0, 1)), -(3 + d))
    assert str(image) == "[-3 - d, 0]"


def test_scaling_example_with_infinite_interval():
    A = MeasurableSet((IntervalLC(E.zero, inf_d),))
    r = E.const(3) + d
    assert mL_measure(scale(A, r * lc_inv(inf_d))[0]) == 3
    assert mL_measure(scale(A, r * lc_inv(inf_d * inf_d))[0]) == 0
    assert mL_measure(scale(A, r * lc_inv(lc_root(inf_d, 2)))[0]) == math.inf


def test_overlaps_and_merging():
    with pytest.raises(OverlapError):
        S((0, 2), (1, 3))
    merged = S((0, 1), (1, 2))
    assert len(merged.intervals) == 1 and m_measure(merged) == E.const(2)
    A = MeasurableSet((IntervalLC(E.zero, E.one, True, False), IntervalLC(E.one, E.const(2), False, True)))
    assert len(A.intervals) == 2
    assert S((0, 1)).issubset(S((-1, 2)))
    with pytest.raises(OverlapError):
        S((0, 1)).union(S(("1/2", 2)))


def test_set_json_roundtrip():
    A = MeasurableSet(S((0, "d"), ("1/2", "3 - d^(1/3)")).intervals, TailCertificate(Fraction(5, 2), "t"))
    B = MeasurableSet.from_json(A.to_json(), E)
    assert str(B) == str(A) and m_measure(B) == m_measure(A)


def test_sandwich_examples():
    sw = st_preimage_sandwich(RealSet((RealInterval(Fraction(0), Fraction(1)),)), 10)
    assert str(sw.inner) == "[0, 1]"
    assert str(sw.outer) == "[-1/10, 11/10]"
    assert sw.value == 1
    assert st_preimage_sandwich(RealSet(()), 10).value == 0
    two = RealSet((RealInterval(Fraction(0), Fraction(1)), RealInterval(Fraction(2), Fraction(4))))
    assert st_preimage_sandwich(two, 10).value == 3


def test_sandwich_rate():
    rng = random.Random(5)
    for _ in range(50):
        R = real_set(rng)
        for n in (10, 1000):
            sw = st_preimage_sandwich(R, n)
            lo, hi = mL_measure(sw.inner), mL_measure(sw.outer)
            assert lo <= sw.value <= hi and hi - lo <= Fraction(2 * len(R.intervals), n)


def test_shadow_examples():
    sh = shadow(S((0, "1+d"), ("2+d", "2+2*d")))
    assert sh.intervals.measure() == 1 and sh.points == (Fraction(2),)
    sh = shadow(S((0, "d")))
    assert sh.points == (0,) and sh.measure() == 0
    sh = shadow(S((0, 1), ("1+d", 2)))
    assert len(sh.intervals.intervals) == 1 and sh.measure() == 2
    with pytest.raises(ValueError):
        shadow(S((0, "d^-1")))


def test_rectangles():
    assert rect_measure([RectangleND((IntervalLC.closed(0, "1+d", E), IntervalLC.closed(0, 2, E)))]) == 2
    assert rect_measure([RectangleND((IntervalLC.closed(0, "d", E), IntervalLC.closed(0, "d^-1", E)))]) == 1
    assert rect_measure([]) == 0


@pytest.mark.parametrize("ctx", [E, FLOAT])
def test_standard_part_of_measure_is_lebesgue_measure(ctx):
    rng = random.Random(6)
    for _ in range(200):
        A = measurable_set(rng, ctx)
        st_m, mL = standard_part(m_measure(A)), mL_measure(A)
        assert st_m == mL if ctx.exact else abs(st_m - mL) <= 1e-12


def test_csv_rows():
    text = csv_rows([("a", S((0, "1+d"))), ("b", S((0, "d")))])
    lines = text.strip().splitlines()
    assert lines[0] == "set_id,m,m_L,shadow_measure"
    assert lines[1] == "a,1 + d,1,1" and lines[2] == "b,d,0,0"
