"""Selects the compiled kernels when available, else the pure-Python twin.

Set ``LEVICIVITA_PURE_PYTHON=1`` to force the fallback.  Exponents too large
for a C ``long long`` make the compiled kernels raise ``OverflowError``; the
wrappers below retry those calls in pure Python.
"""

from __future__ import annotations

import os

from . import _kernels_py

COMPILED = False
_impl = _kernels_py

if not os.environ.get("LEVICIVITA_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py

BACKEND = "cython" if COMPILED else "python"


def add(ea, ca, eb, cb, sign, zeta, exact):
    name = "add_exact" if exact else "add_float"
    try:
        return getattr(_impl, name)(ea, ca, eb, cb, sign, zeta)
    except OverflowError:
        return getattr(_kernels_py, name)(ea, ca, eb, cb, sign, zeta)


def mul(ea, ca, eb, cb, limit, zeta, exact):
    name = "mul_exact" if exact else "mul_float"
    try:
        return getattr(_impl, name)(ea, ca, eb, cb, limit, zeta)
    except OverflowError:
        return getattr(_kernels_py, name)(ea, ca, eb, cb, limit, zeta)
