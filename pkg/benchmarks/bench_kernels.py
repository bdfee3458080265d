"""Compiled vs pure-Python kernels: raw add/mul throughput and the field-law suite.

    python3 benchmarks/bench_kernels.py [--terms 40] [--repeat 5]

The suite timing runs in subprocesses so that LEVICIVITA_PURE_PYTHON takes
effect at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

import gmpy2

from levicivita import _kernels_py

try:
    from levicivita import _kernels
except ImportError:
    _kernels = None


def series(rng, n, exact):
    es = tuple(sorted(rng.sample(range(-50, 400), n)))
    if exact:
        cs = tuple(gmpy2.mpq(rng.randint(-99, 99) or 1, rng.randint(1, 12)) for _ in es)
    else:
        cs = tuple(rng.uniform(-1, 1) for _ in es)
    return es, cs


def kernel_table(terms, repeat):
    rng = random.Random(0)
    rows = []
    for exact in (False, True):
        a, b = series(rng, terms, exact), series(rng, terms, exact)
        zeta = 0 if exact else 1e-13
        kind = "exact" if exact else "float"
        calls = {
            "add": lambda m: getattr(m, f"add_{kind}")(*a, *b, 1, zeta),
            "mul": lambda m: getattr(m, f"mul_{kind}")(*a, *b, 600, zeta),
        }
        for op, call in calls.items():
            number = 2000 if op == "add" else 200
            py = min(timeit.repeat(lambda: call(_kernels_py), number=number, repeat=repeat)) / number
            cy = (min(timeit.repeat(lambda: call(_kernels), number=number, repeat=repeat)) / number
                  if _kernels else float("nan"))
            rows.append((f"{op}_{kind}", py, cy))
    return rows


def suite_seconds(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("LEVICIVITA_PURE_PYTHON", None)
    if pure:
        env["LEVICIVITA_PURE_PYTHON"] = "1"
    code = ("from levicivita.suites import run_suite; from levicivita.kernels import BACKEND; "
            "r = run_suite('field-laws'); print(BACKEND, r.elapsed, r.passed)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, elapsed, passed = out.stdout.split()
    if passed != "True":
        raise SystemExit(f"field-law suite failed under {backend}")
    return float(elapsed)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--terms", type=int, default=40, help="terms per operand")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--skip-suite", action="store_true")
    args = p.parse_args()

    print(f"{'kernel':<12}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, py, cy in kernel_table(args.terms, args.repeat):
        print(f"{name:<12}{py * 1e6:>14.2f}{cy * 1e6:>14.2f}{py / cy:>9.1f}x")
    if not args.skip_suite:
        py, cy = suite_seconds(True), suite_seconds(False)
        print(f"\nfield-law suite (10,000 triples): python {py:.2f}s, cython {cy:.2f}s, {py / cy:.1f}x")


if __name__ == "__main__":
    main()
