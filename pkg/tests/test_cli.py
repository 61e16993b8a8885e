import json

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from realroots.cli import main
from realroots.poly import Polynomial, write_polynomial


@pytest.fixture
def cubic(tmp_path):
    path = tmp_path / "p.json"
    write_polynomial(Polynomial([-2.0, 1.0, -2.0, 1.0]), path, fmt="json")
    return path


@pytest.fixture
def circle(tmp_path):
    path = tmp_path / "c.json"
    write_polynomial(Polynomial([1.0, 0.0, 1.0]), path, fmt="json")
    return path


@pytest.mark.parametrize("algo", ["sign", "stabilized", "hybrid", "modular", "oracle"])
def test_solve(cubic, capsys, algo):
    assert main(["solve", "--algo", algo, "--input", str(cubic)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["algo"] == algo and len(out["roots"]) == 1
    assert abs(out["roots"][0] - 2) <= 1e-8 and out["residuals"][0] <= 1e-12


def test_solve_formats(cubic, capsys):
    assert main(["solve", "--input", str(cubic), "--output", "csv"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines[0] == "root,residual" and float(lines[1].split(",")[0]) == pytest.approx(2)
    assert main(["solve", "--input", str(cubic), "--output", "text", "--verbose"]) == 0
    cap = capsys.readouterr()
    assert float(cap.out.split()[0]) == pytest.approx(2) and "iterations=" in cap.err


def test_count(circle, capsys):
    assert main(["count", "--center", "0,0", "--radius", "2", "--squarings", "0", "--input", str(circle)]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert main(["count", "--center", "0,1", "--radius", "0.5", "--squarings", "1", "--input", str(circle)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_radii(circle, capsys):
    assert main(["radii", "--input", str(circle), "--refine", "2", "--output", "json"]) == 0
    rad = json.loads(capsys.readouterr().out)["radii"]
    assert len(rad) == 2 and all(r <= 1 <= 4 ** 0.25 * r * (1 + 1e-12) for r in rad)


def test_verify_round_trip(cubic, tmp_path, capsys):
    assert main(["solve", "--input", str(cubic)]) == 0
    out = tmp_path / "sol.json"
    out.write_text(capsys.readouterr().out)
    assert main(["verify", "--input", str(out)]) == 0
    data = json.loads(out.read_text())
    data["residuals"] = [1.0]
    out.write_text(json.dumps(data))
    assert main(["verify", "--input", str(out)]) == 3


def test_bench(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["bench", "--suite", "mignotte", "--n", "32", "--out", str(out), "--verbose"]) == 0
    assert out.read_text().startswith("family,n,r,trials,failures")
    assert json.loads(out.with_suffix(".json").read_text())[0]["n"] == 32


def test_exit_codes(tmp_path, cubic):
    assert main(["solve", "--algo", "sign", "--input", str(tmp_path / "missing.json")]) == 4
    assert main([]) == 2
    assert main(["solve", "--input", str(cubic), "--bogus"]) == 2
    assert main(["solve", "--input", str(cubic), "--alpha", "-1"]) == 2
    assert main(["solve", "--input", str(cubic), "--algo", "stabilized", "--scale", "determinantal"]) == 2
    assert main(["solve", "--input", str(cubic), "--algo", "modular", "--r", "2", "--max-iter", "2"]) == 3
    assert main(["--help"]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["count", "--input", str(bad)]) == 4


FLAGS = ["solve", "bench", "count", "radii", "verify", "--algo", "sign", "modular", "--input", "--r", "3", "-1",
         "--alpha", "0", "1e-4", "--tol", "nan", "--max-iter", "--check-period", "--seed", "--output", "json",
         "csv", "--trials", "--suite", "mignotte", "--n", "4", "--center", "1,2", "--radius", "--squarings", "9",
         "--refine", "--verbose", "x"]


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.sampled_from(FLAGS + ["@P"]), max_size=8))
def test_fuzzed_argv(cubic, argv):
    argv = [str(cubic) if a == "@P" else a for a in argv]
    if "bench" in argv and "--n" not in argv:
        argv += ["--n", "4"]
    assert main(argv) in (0, 2, 3, 4)
