import json
import os
import subprocess

import pytest

CLI = os.environ.get("ECHKATOK_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="ECHKATOK_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_csv_spectrum():
    r = run("spectrum", "katok", "--a", "2/5", "--count", "3", "--format", "csv")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "k,m1,m2,value,grading"
    assert lines[1] == "0,0,0,0,0"
    assert lines[2].startswith("1,2,0,8.97597901025655")


def test_json_spectrum_schema_and_determinism():
    args = ("spectrum", "katok", "--a", "2/5", "--count", "4", "--exact")
    r1, r2 = run(*args), run(*args)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout  # byte-identical
    doc = json.loads(r1.stdout)
    assert doc["schema_version"] == "1"
    assert doc["rows"][1]["value_exact"] == "20/7*pi"
    ks = [row["k"] for row in doc["rows"]]
    assert ks == sorted(ks)
    vals = [row["value"] for row in doc["rows"]]
    assert vals == sorted(vals)


def test_csv_and_json_rows_agree():
    base = ("spectrum", "ellipsoid", "--x", "1", "--y", "2", "--count", "5")
    csv_rows = run(*base, "--format", "csv").stdout.strip().splitlines()[1:]
    doc = json.loads(run(*base, "--format", "json").stdout)
    assert len(csv_rows) == len(doc["rows"])
    for line, row in zip(csv_rows, doc["rows"]):
        k, m1, m2, value, _ = line.split(",")
        assert int(k) == row["k"]
        assert int(m1) == row["m1"]
        assert int(m2) == row["m2"]
        assert float(value) == row["value"]


def test_usage_error_exit_code():
    r = run("spectrum", "katok", "--a", "0", "--count", "3")
    assert r.returncode == 1
    assert "usage error" in r.stderr


def test_certification_exit_code():
    # A parameter that is a disguised rational: floors of k/(1-a) cannot be
    # certified once k*a/(1-a) lands on an integer.
    r = run("spectrum", "katok", "--a", "0.500000000000000000000000", "--count", "40")
    assert r.returncode == 3
    assert "certification failure" in r.stderr


def test_verify_suites_pass():
    assert run("verify", "lattice", "--a", "2/5", "--n-max", "12").returncode == 0
    assert (
        run("verify", "spectrum-agreement", "--a", "2/5", "--count", "100").returncode
        == 0
    )
    assert (
        run("verify", "floor-identity", "--a", "sqrt2/2", "--k-max", "500").returncode
        == 0
    )
    assert run("verify", "bijection", "--a", "1/2", "--n-max", "12").returncode == 0


def test_a_limit_comparison():
    doc = json.loads(
        run(
            "spectrum", "katok", "--a", "1e-4", "--count", "10", "--a-limit", "0"
        ).stdout
    )
    assert doc["a_limit_reference"] == "M2(N(2pi,2pi))"
    assert 0 < doc["max_abs_deviation"] < 0.01


def test_flow_orbits():
    doc = json.loads(run("flow", "orbits", "--a", "2/5").stdout)
    rows = doc["rows"]
    assert rows[0]["orbit"] == "g1"
    assert abs(rows[0]["period"] - rows[0]["period_formula"]) < 1e-6
    assert abs(rows[1]["period"] - rows[1]["period_formula"]) < 1e-6
