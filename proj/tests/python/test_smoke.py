import json
import os
import subprocess

import pytest

import fglthh

CLI = os.environ.get("FGLTHH_CLI")


def test_sigma_values():
    assert fglthh.sigma("bp", 1, prime=2) == "2*lambda_1"
    assert fglthh.sigma("mu-moving", 1) == "-2*lambda'_1"
    assert fglthh.sigma("mu-split", 2, truncation=4) == "x_1*e_1 + 3*e_2"


def test_eta_r():
    assert fglthh.eta_R(1, truncation=4) == "2*b_1 + x_1"


def test_mu_cohomology():
    groups = fglthh.cohomology("mu-moving", max_degree=10, truncation=6)
    assert groups[0] == {"free_rank": 1, "invariant_factors": [], "primary": []}
    assert groups[9]["invariant_factors"] == [2, 240]
    assert sorted(groups[9]["primary"]) == [2, 3, 5, 16]
    split = fglthh.cohomology("mu-split", max_degree=10, truncation=6)
    assert [g["invariant_factors"] for g in split] == [g["invariant_factors"] for g in groups]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bp_dichotomy(p):
    groups = fglthh.cohomology("bp", prime=p)
    d = 2 * p * p + 2 * p - 3
    assert groups[d]["invariant_factors"] == [16 if p == 2 else p * p]
    assert len(groups) == 2 * p * p + 4 * p - 5


def test_linear_algebra():
    assert fglthh.smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    big = 2**80
    assert fglthh.smith_diagonal([[big]]) == [big]
    d8 = [[-8, -4, -5, 0, 0], [0, -4, -4, -8, 4], [0, 0, -2, 0, -8], [0, -3, -6, 0, -3],
          [0, 0, 0, -6, -6], [0, 0, -2, 0, -8], [0, 0, 0, 0, -5]]
    d9 = [[0, -3, -6, 4, 4, 0, 0], [0, 0, -2, 0, 0, 2, 0]]
    assert fglthh.homology(d8, d9)["invariant_factors"] == [2, 240]


def test_report_round_trip():
    doc = fglthh.report("cohomology", truncation=6)
    assert doc["schema"] == fglthh.SCHEMA == "fgl-thh/1"
    assert json.loads(json.dumps(doc)) == doc
    assert doc["cohomology"]["degrees"][9]["group"]["invariant_factors"] == [2, 240]
    assert fglthh.render("sigma", "tex", max_n=1).count("\\sigma(x_1) &= -2\\lambda'_1") == 1


def test_errors():
    with pytest.raises(ValueError):
        fglthh.report("cohomology", flavor="bp", prime=7)
    with pytest.raises(ValueError):
        fglthh.report("cohomology", truncation=3)
    with pytest.raises(ValueError):
        fglthh.sigma("nonsense", 1)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@pytest.mark.skipif(not CLI, reason="FGLTHH_CLI not set")
def test_cli_examples():
    r = run("sigma", "--flavor", "bp", "--prime", "2", "--max-n", "3", "--format", "text")
    assert r.returncode == 0
    assert "sigma(v_1) = 2*lambda_1" in r.stdout.splitlines()
    r = run("cohomology", "--flavor", "mu-moving", "--max-degree", "10", "--format", "json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["schema"] == "fgl-thh/1"
    assert doc["cohomology"]["degrees"][9]["group"]["invariant_factors"] == [2, 240]
    assert run("verify", "--flavor", "mu-split", "--max-degree", "10").returncode == 0


@pytest.mark.skipif(not CLI, reason="FGLTHH_CLI not set")
def test_cli_exit_codes(tmp_path):
    assert run().returncode == 2
    assert run("cohomology", "--flavor", "bp", "--prime", "7").returncode == 2
    assert run("cohomology", "--flavor", "bp", "--prime", "4", "--unsafe-large-prime").returncode == 2
    assert run("cohomology", "--truncation", "4").returncode == 2
    assert run("sigma", "--format", "xml").returncode == 2
    assert run("sigma", "--output", str(tmp_path / "missing" / "x.txt")).returncode == 2
    out = tmp_path / "s.tex"
    assert run("sigma", "--format", "tex", "--output", str(out)).returncode == 0
    assert "\\begin{align*}" in out.read_text()


@pytest.mark.skipif(not CLI, reason="FGLTHH_CLI not set")
def test_cli_deterministic():
    for fmt in ("json", "tex", "text"):
        a = run("cohomology", "--flavor", "mu-split", "--format", fmt)
        b = run("cohomology", "--flavor", "mu-split", "--format", fmt)
        assert a.returncode == 0 and a.stdout == b.stdout
    env = dict(os.environ, FGLTHH_THREADS="1")
    one = subprocess.run([CLI, "cohomology", "--format", "json"], capture_output=True, text=True, env=env)
    assert one.stdout == run("cohomology", "--format", "json").stdout
