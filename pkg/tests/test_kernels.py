import os
import random
import subprocess
import sys
from fractions import Fraction

import gmpy2
import pytest

from levicivita import _kernels_py as py
from levicivita import kernels

compiled = pytest.importorskip("levicivita._kernels")


def _series(rng, exact, n=12):
    es = sorted(rng.sample(range(-40, 80), rng.randint(0, n)))
    if exact:
        cs = [gmpy2.mpq(rng.randint(-50, 50), rng.randint(1, 9)) for _ in es]
    else:
        cs = [rng.uniform(-10, 10) for _ in es]
    return tuple(es), tuple(cs)


@pytest.mark.parametrize("exact", [False, True])
def test_add_backends_agree(exact):
    rng = random.Random(1)
    name = "add_exact" if exact else "add_float"
    zeta = 0 if exact else 1e-13
    for _ in range(500):
        a, b = _series(rng, exact), _series(rng, exact)
        for sign in (1, -1):
            assert getattr(compiled, name)(*a, *b, sign, zeta) == getattr(py, name)(*a, *b, sign, zeta)


@pytest.mark.parametrize("exact", [False, True])
def test_mul_backends_agree(exact):
    rng = random.Random(2)
    name = "mul_exact" if exact else "mul_float"
    zeta = 0 if exact else 1e-13
    for _ in range(500):
        a, b = _series(rng, exact), _series(rng, exact)
        limit = rng.randint(-20, 120)
        got, want = getattr(compiled, name)(*a, *b, limit, zeta), getattr(py, name)(*a, *b, limit, zeta)
        assert got[0] == want[0]
        assert got[1:] == want[1:] if exact else all(
            abs(x - y) <= 1e-12 * max(1.0, abs(y)) for x, y in zip(got[1], want[1]))


def test_cancellation_removes_terms():
    e, c = (0, 3), (gmpy2.mpq(1), gmpy2.mpq(2))
    assert py.add_exact(e, c, e, c, -1, 0)[0] == ()
    assert compiled.add_exact(e, c, e, c, -1, 0)[0] == ()


def test_overflow_falls_back_to_python():
    big = (2**70,)
    out = kernels.add(big, (gmpy2.mpq(1, 3),), (), (), 1, 0, True)
    assert out[0] == big and out[1][0] == Fraction(1, 3)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.COMPILED == (kernels.BACKEND == "cython")


def test_environment_forces_pure_python():
    env = dict(os.environ, LEVICIVITA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import levicivita.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
