import json
import math
import subprocess
import sys

import pytest

from levicivita.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_eval_examples(capsys):
    assert run_json(capsys, "eval", "st(3 + 5*d)")[1]["value"] == "3"
    code, out, _ = run(capsys, "--output", "text", "--mode", "exact", "eval", "1/(1-d)")
    assert code == 0 and out.strip().endswith("+ d^16 + O(d^17)")
    assert run_json(capsys, "eval", "lambda(d^(1/2)+d)")[1]["value"] == "1/2"


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "eval", "1/(1-d)", "--depth", "4", "--output", "text")
    assert code == 0 and out.strip() == "1.0 + d + d^2 + d^3 + d^4 + O(d^5)"


def test_measure_single_interval(capsys):
    code, out, _ = run_json(capsys, "--mode", "exact", "measure", '[[0, "1+d"]]')
    assert code == 0
    assert out["m"] == "1 + d" and out["m_L"] == 1 and out["shadow"]["measure"] == 1


def test_measure_scaling_example(capsys):
    values = []
    for x in ["(3+d)*d", "(3+d)*d^2", "(3+d)*d^(1/2)"]:
        code, out, _ = run_json(capsys, "--mode", "exact", "measure", '[[0, "d^-1"]]', "--scale", x)
        assert code == 0
        values.append(out["m_L"])
    assert values == [3, 0, "+inf"]


def test_measure_random_batch_csv(capsys):
    code, out, _ = run(capsys, "--seed", "3", "--output", "csv", "measure", "--random", "25")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "set_id,m,m_L,shadow_measure" and len(lines) == 26
    assert run(capsys, "--seed", "3", "--output", "csv", "measure", "--random", "25")[1] == out


def test_integrate_examples(capsys):
    code, out, _ = run_json(capsys, "integrate", "--ext", "sin(x)", "--order", "2", "--interval", "[0,pi]")
    assert code == 0 and out["value"] == pytest.approx(2.0, abs=1e-9) and out["verdict"] == "finite"
    out = run_json(capsys, "integrate", "--power", "a=-1", "--interval", "[1,10]")[1]
    assert out["value"] == pytest.approx(math.log(10), abs=1e-10)
    out = run_json(capsys, "integrate", "--limit", "Aq", "--q", "0", "--power", "a=-2")[1]
    assert out["value"] == pytest.approx(1.0, abs=1e-6) and out["trace"]
    out = run_json(capsys, "integrate", "--limit", "Aq", "--power", "a=-1/2")[1]
    assert out["verdict"] == "+inf" and out["value"] == "+inf"


def test_integrate_refusal_is_a_failure(capsys):
    code, out, err = run(capsys, "--mode", "exact", "integrate", "--ext", "x", "--interval", "[0, d^-1]")
    assert code == 1 and out == "" and "infinite measure" in err


def test_delta_examples(capsys):
    code, out, _ = run_json(capsys, "delta", "--f", "sin(x)", "--r", "0.3")
    assert code == 0 and out["rows"][0]["computed"] == pytest.approx(math.sin(0.3), abs=1e-12)
    code, out, _ = run_json(capsys, "delta", "--f", "x^3", "--r", "1", "--m", "2")
    assert out["rows"][0]["computed"] == pytest.approx(6.0)
    code, out, err = run(capsys, "delta", "--f", "x^2", "--r", "0", "--m", "3", "--k", "1")
    assert code == 2 and "exceeds" in err


def test_delta_table_csv(capsys):
    code, out, _ = run(capsys, "--output", "csv", "delta", "--f", "sin(x)", "--f", "exp(x)", "--m", "1")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "function,r,h,k,m,expected,computed,residual" and len(lines) == 3


def test_suite(capsys):
    code, out, err = run_json(capsys, "suite", "scaling-example")
    assert code == 0 and out["passed"] and out["suites"][0]["checks"] == 3
    assert "[PASS]" in err


@pytest.mark.parametrize("argv", [
    ["eval", "1/(1-"],
    ["--depth", "3", "eval", "d"],
    ["--tol", "0", "eval", "d"],
    ["bogus"],
    ["integrate", "--interval", "[0,1]"],
    ["integrate", "--ext", "x", "--interval", "0,1"],
    ["measure", "not json"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "levicivita", "eval", "st(2+d)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "2"
