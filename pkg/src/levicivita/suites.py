"""Acceptance suites: each returns a ``SuiteResult`` with counts and a one-line summary."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import EXACT, FLOAT, LCContext, lc_inv, lc_root, standard_part, valuation
from .distributions import make_delta, pair_derivative
from .expr import diff_n, eval_real, parse
from .extension import extension
from .integrate import (
    Aq,
    Extension,
    Locator,
    PiecewiseSimple,
    StepLC,
    epigraph_l_integral,
    ftc_check,
    integrate_by_parts,
    m_integral,
    m_integral_limit,
)
from .measure import (
    MeasurableSet,
    m_measure,
    mL_measure,
    scale,
    shadow,
    st_preimage_sandwich,
    translate,
)
from .quadrature import quad
from .randgen import (
    finite_lc,
    lc_number,
    measurable_set,
    random_interval,
    random_polynomial,
    real_set,
    step_function,
)
from .simple import IntervalLC, PiecewiseFn, from_expr, ps_integral

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all"]


@dataclass
class SuiteResult:
    number: int
    name: str
    title: str
    passed: bool
    checks: int
    failures: int
    elapsed: float
    detail: str = ""
    examples: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d}. {self.title}: {self.checks - self.failures}/{self.checks} "
                f"checks ({self.elapsed:.2f}s){' - ' + self.detail if self.detail else ''}")

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": self.name,
            "number": self.number,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "elapsed": round(self.elapsed, 4),
            "detail": self.detail,
            "examples": [str(e) for e in self.examples[:5]],
        }


class _Tally:
    def __init__(self):
        self.checks = 0
        self.failures = 0
        self.examples = []

    def check(self, ok: bool, example=None):
        self.checks += 1
        if not ok:
            self.failures += 1
            if example is not None and len(self.examples) < 5:
                self.examples.append(example)


def _exact_ctx(depth: int) -> LCContext:
    return LCContext(depth=depth, zeta=0)


# ------------------------------------------------------------------ 1
def field_laws(seed=0, trials=10_000, depth=16, budget=30.0, **_):
    rng = random.Random(seed)
    ctx = _exact_ctx(depth)
    t = _Tally()
    one = ctx.one
    start = time.perf_counter()
    for i in range(trials):
        a, b, c = (lc_number(rng, ctx) for _ in range(3))
        t.check(((a + b) + c).same_within_precision(a + (b + c)), ("add-assoc", i))
        t.check((a + b).same_within_precision(b + a), ("add-comm", i))
        t.check(((a * b) * c).same_within_precision(a * (b * c)), ("mul-assoc", i))
        t.check((a * b).same_within_precision(b * a), ("mul-comm", i))
        t.check((a * (b + c)).same_within_precision(a * b + a * c), ("distrib", i))
        if not a.is_zero():
            p = a * lc_inv(a)
            # residual may start past the window, or past what a itself is known to
            need = Fraction(ctx.depth, a._den)
            if a.prec is not None:
                need = min(need, a.prec - valuation(a))
            t.check(p.same_within_precision(one) and (p.prec is None or p.prec >= need),
                    ("inverse", i, str(a)))
    elapsed = time.perf_counter() - start
    fast = elapsed < budget
    detail = f"{trials} triples, depth {depth}, {elapsed:.1f}s (budget {budget:.0f}s)"
    return t, fast, detail


# ------------------------------------------------------------------ 2
def st_homomorphism(seed=0, trials=10_000, depth=16, **_):
    rng = random.Random(seed)
    ctx = _exact_ctx(depth)
    t = _Tally()
    for i in range(trials):
        x, y = finite_lc(rng, ctx), finite_lc(rng, ctx)
        sx, sy = standard_part(x), standard_part(y)
        t.check(standard_part(x + y) == sx + sy, ("sum", i, str(x), str(y)))
        t.check(standard_part(x * y) == sx * sy, ("product", i, str(x), str(y)))
    return t, True, f"{trials} finite pairs, exact equality"


# ------------------------------------------------------------------ 3
def measure_coherence(seed=0, trials=1_000, depth=16, **_):
    rng = random.Random(seed)
    t = _Tally()
    for mode, ctx in (("exact", _exact_ctx(depth)), ("float", LCContext(depth=depth))):
        for i in range(trials):
            A = measurable_set(rng, ctx)
            st_m = standard_part(m_measure(A, ctx))
            mL = mL_measure(A)
            ok = st_m == mL if mode == "exact" else abs(st_m - mL) <= 1e-12
            t.check(ok, (mode, i, str(A)))
    return t, True, f"{trials} sets per mode; exact equality / 1e-12"


# ------------------------------------------------------------------ 4
def translation_homogeneity(seed=0, trials=1_000, depth=16, **_):
    rng = random.Random(seed)
    ctx = _exact_ctx(depth)
    t = _Tally()
    for i in range(trials):
        A = measurable_set(rng, ctx, tail=False)
        # integer exponents keep the image's endpoints apart within the window
        x = lc_number(rng, ctx, lo=0, hi=5, terms=3, dens=(1,))
        if rng.random() < 0.5:
            x = -x
        mL = mL_measure(A)
        t.check(mL_measure(translate(A, x)) == mL, ("translate", i))
        image, report = scale(A, x)
        got = mL_measure(image)
        t.check(abs(got - abs(standard_part(x)) * mL) <= 1e-12 and report.get("holds", False),
                ("scale", i, str(A), str(x)))
    return t, True, f"{trials} pairs; translation exact, homogeneity to 1e-12"


# ------------------------------------------------------------------ 5
def scaling_example(depth=16, **_):
    ctx = _exact_ctx(depth)
    a = ctx.monomial(1, -1)
    A = MeasurableSet((IntervalLC(ctx.zero, a),))
    r = ctx.const(3) + ctx.d
    t = _Tally()
    cases = (
        ("r/a", r * lc_inv(a), Fraction(3)),
        ("r/a^2", r * lc_inv(a * a), Fraction(0)),
        ("r/a^(1/2)", r * lc_inv(lc_root(a, 2)), math.inf),
    )
    got = []
    for label, x, want in cases:
        value = mL_measure(scale(A, x)[0])
        got.append(f"{label} -> {value}")
        t.check(value == want, (label, value))
    return t, True, "; ".join(got)


# ------------------------------------------------------------------ 6
def lebesgue_sandwich(seed=0, trials=500, n=10**6, **_):
    rng = random.Random(seed)
    t = _Tally()
    for i in range(trials):
        R = real_set(rng)
        sw = st_preimage_sandwich(R, n)
        inner, outer = mL_measure(sw.inner), mL_measure(sw.outer)
        k = len(R.intervals)
        t.check(inner <= sw.value <= outer and outer - inner <= Fraction(2 * k, n), (i, R))
    return t, True, f"{trials} real unions, n = {n}"


# ------------------------------------------------------------------ 7
def shadow_preservation(seed=0, trials=500, depth=16, **_):
    rng = random.Random(seed)
    ctx = _exact_ctx(depth)
    t = _Tally()
    for i in range(trials):
        A = measurable_set(rng, ctx, tail=False)
        sh = shadow(A)
        disjoint = all(a.hi < b.lo for a, b in zip(sh.intervals.intervals, sh.intervals.intervals[1:]))
        t.check(sh.measure() == mL_measure(A) and disjoint, (i, str(A)))
    return t, True, f"{trials} sets, Lebesgue(shadow) = m_L exactly"


# ------------------------------------------------------------------ 8
LIFTING_FUNCTIONS = ("sin(x)", "exp(x)", "x^3 - x", "1/(1 + x^2)")


def lifting(budget=5.0, **_):
    t = _Tally()
    start = time.perf_counter()
    worst = 0.0
    for text in LIFTING_FUNCTIONS:
        oracle = quad(parse(text), 0.0, 1.0, 1e-13)
        for h in (0, 1, 2):
            for ctx in (EXACT, FLOAT):
                value = m_integral(Extension(extension(text, h)), IntervalLC.closed(0, 1, ctx))
                worst = max(worst, abs(value - oracle))
                t.check(abs(value - oracle) <= 1e-8, (text, h, value, oracle))
    elapsed = time.perf_counter() - start
    return t, elapsed < budget, f"max deviation {worst:.2e}, {elapsed:.2f}s (budget {budget:.0f}s)"


# ------------------------------------------------------------------ 9
def power_table(**_):
    t = _Tally()
    ctx = EXACT
    window = IntervalLC(ctx.one, ctx.monomial(1, -1))

    def power(a):
        return Extension(extension(f"x^({a})", 0, (1, math.inf)))

    r = m_integral_limit(power("-2"), Aq(Fraction(0), window))
    t.check(r.verdict == "finite" and abs(r.value - 1) <= 1e-6, ("a=-2", r.value))
    worst = 0.0
    f = power("-1")
    for n in range(1, 1001):
        v = m_integral(f, IntervalLC.closed(1, n, ctx))
        worst = max(worst, abs(v - math.log(n)))
        t.check(abs(v - math.log(n)) <= 1e-10, ("ln", n, v))
    r1 = m_integral_limit(f, Aq(Fraction(0), window))
    t.check(r1.verdict == "+inf", ("a=-1", r1.verdict))
    r2 = m_integral_limit(power("-1/2"), Aq(Fraction(0), window))
    t.check(r2.verdict == "+inf", ("a=-1/2", r2.verdict))
    detail = (f"a=-2 -> {r.value:.9f}; a=-1 windows max err {worst:.1e}, limit {r1.verdict}; "
              f"a=-1/2 -> {r2.verdict}")
    return t, True, detail


# ------------------------------------------------------------------ 10
def ftc(seed=0, trials=100, **_):
    rng = random.Random(seed)
    t = _Tally()
    rep = ftc_check(Locator(), IntervalLC.closed(-1, 1, EXACT))
    t.check(rep["lhs"] == 1 and rep["rhs"] == 0 and rep["measurable"] is False, rep)
    for i in range(trials):
        iv = random_interval(rng, EXACT)
        F = random_polynomial(rng, iv, degree=6)
        rep = ftc_check(PiecewiseSimple(F), iv, tol=1e-10)
        t.check(rep["consistent"], (i, rep))
    return t, True, f"locator lhs 1 / rhs 0 / not measurable; {trials} polynomials to 1e-10"


# ------------------------------------------------------------------ 11
def by_parts(seed=0, trials=100, **_):
    rng = random.Random(seed)
    t = _Tally()
    worst = 0.0
    for i in range(trials):
        iv = random_interval(rng, EXACT)
        f = random_polynomial(rng, iv, degree=5)
        g = random_polynomial(rng, iv, degree=5)
        rep = integrate_by_parts(f, g, iv, tol=1e-9)
        worst = max(worst, rep["residual"])
        t.check(rep["residual"] <= 1e-9, (i, rep))
    half_pi = IntervalLC.closed(0, math.pi / 2, FLOAT)
    s = PiecewiseFn((from_expr("sin(x)", half_pi),))
    c = PiecewiseFn((from_expr("cos(x)", half_pi),))
    rep = integrate_by_parts(s, c, half_pi, tol=1e-9)
    t.check(rep["residual"] <= 1e-9, ("sin/cos", rep))
    return t, True, f"{trials} polynomial pairs + sin/cos, max residual {max(worst, rep['residual']):.1e}"


# ------------------------------------------------------------------ 12
DELTA_FUNCTIONS = ("sin(x)", "exp(x)", "x^3 - x")


def delta_suite(depth=16, **_):
    ctx = _exact_ctx(depth)
    t = _Tally()
    worst = 0.0
    for text in DELTA_FUNCTIONS:
        base = parse(text)
        for r in (Fraction(0), Fraction(3, 10), Fraction(1)):
            for h in (ctx.d, ctx.d * ctx.d):
                for k in range(4):
                    spec, bump = make_delta(ctx.const(r), h, k)
                    iv, fn = bump.pieces[0]
                    total = ps_integral(fn, iv)
                    t.check(total.is_exact and str(total) == "1", ("normalization", text, r, k))
                    for m in range(k + 1):
                        got = pair_derivative(spec, m, extension(base, None))
                        want = (-1) ** m * eval_real(diff_n(base, m), float(r))
                        worst = max(worst, abs(got - want))
                        t.check(abs(got - want) <= 1e-9, (text, r, str(h), k, m, got, want))
                        if m >= 1:
                            low = pair_derivative(spec, m, extension(base, m - 1))
                            t.check(low == 0 and isinstance(low, Fraction), ("j<m", text, m, low))
    return t, True, f"max residual {worst:.1e}; j < m exactly 0; normalization exact"


# ------------------------------------------------------------------ 13
def epigraph(seed=0, trials=200, depth=16, **_):
    rng = random.Random(seed)
    ctx = _exact_ctx(depth)
    t = _Tally()
    for i in range(trials):
        steps = step_function(rng, ctx)
        rep = epigraph_l_integral(StepLC(steps))
        direct = m_integral(StepLC(steps), MeasurableSet(tuple(iv for iv, _ in steps))) if steps else 0
        t.check(rep["consistent"] and rep["value"] == direct, (i, rep))
    return t, True, f"{trials} non-negative step functions, exact equality"


_TABLE = [
    (1, "field-laws", "Field laws (exact, depth 16)", field_laws),
    (2, "st-homomorphism", "Standard-part homomorphism", st_homomorphism),
    (3, "measure-coherence", "Measure coherence st(m) = m_L", measure_coherence),
    (4, "translation-homogeneity", "Translation invariance and homogeneity", translation_homogeneity),
    (5, "scaling-example", "Scaling example a = d^-1", scaling_example),
    (6, "lebesgue-sandwich", "Lebesgue coherence sandwich", lebesgue_sandwich),
    (7, "shadow", "Shadow structure and measure preservation", shadow_preservation),
    (8, "lifting", "Lifting theorem", lifting),
    (9, "power-table", "x^a integrability table", power_table),
    (10, "ftc", "FTC counterexample and restricted FTC", ftc),
    (11, "by-parts", "Integration by parts", by_parts),
    (12, "delta", "Delta suite", delta_suite),
    (13, "epigraph", "Epigraph consistency", epigraph),
]

SUITES: dict[str, tuple[int, str, Callable]] = {name: (num, title, fn) for num, name, title, fn in _TABLE}


def run_suite(name: str, seed: int = 0, **kw) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    number, title, fn = SUITES[name]
    start = time.perf_counter()
    try:
        tally, extra_ok, detail = fn(seed=seed, **kw)
    except Exception as exc:  # a crash is a failure, reported with its cause
        return SuiteResult(number, name, title, False, 1, 1, time.perf_counter() - start,
                           f"error: {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    passed = tally.failures == 0 and tally.checks > 0 and extra_ok
    return SuiteResult(number, name, title, passed, tally.checks, tally.failures, elapsed, detail,
                       tally.examples)


def run_all(seed: int = 0, **kw) -> list[SuiteResult]:
    return [run_suite(name, seed, **kw) for name in SUITES]
