"""Exit criteria: one suite per criterion, each printed as a single PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone;
under pytest the lines are collected and printed in the terminal summary.
"""

import pytest

from levicivita.suites import SUITES, run_suite

RESULTS = []


@pytest.mark.acceptance
@pytest.mark.parametrize("name", list(SUITES))
def test_criterion(name):
    result = run_suite(name, seed=0)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, f"{result.line()}\n  examples: {result.examples[:3]}"


if __name__ == "__main__":
    import sys

    lines = [run_suite(name) for name in SUITES]
    for r in lines:
        print(r.line())
    sys.exit(0 if all(r.passed for r in lines) else 1)
