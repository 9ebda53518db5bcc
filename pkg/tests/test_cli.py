import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from kspecial.cli import FUNCTIONS, main, parse_assignments, UsageError

GOLDEN = Path(__file__).parent / "fixtures" / "sweep_kg1_seed7.json"


def run(*args, env=None):
    proc = subprocess.run([sys.executable, "-m", "kspecial", *args], capture_output=True, text=True,
                          env=env)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(capsys, *args):
    code = main([*args, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("args, expected", [
    (("gamma_k", "k=2", "x=4"), 2.0),
    (("hyp2f1_k", "k=1", "alpha=1", "beta=1", "gamma=2", "x=0.5"), 2 * math.log(2.0)),
    (("pochhammer_k", "k=2", "x=2", "n=3"), 48.0),
    (("beta_k", "k=1", "x=0.5", "y=0.5"), math.pi),
    (("hyp2f1_k_mixed", "k=1", "alpha=1", "beta=1", "gamma=4"), 1.5),
    (("f1_k", "k=1", "alpha=1", "beta=1", "beta2=1", "gamma=3", "x=0.2", "y=0.1"), 1.1134087132719538),
    (("kfrac_monomial", "k=2", "eta=2", "mu=-2"), 0.25),
    (("kfrac_quadrature", "k=1", "eta=0", "mu=-1", "z=1"), 1.0),
])
def test_eval_examples(capsys, args, expected):
    code, out = run_json(capsys, "eval", *args)
    assert code == 0
    assert out["value"] == pytest.approx(expected, rel=1e-10)
    assert out["converged"] is True and out["function"] == args[0]


def test_eval_text_output(capsys):
    assert main(["eval", "gamma_k", "k=2", "x=4"]) == 0
    out = capsys.readouterr().out
    assert "= 2\n" in out and "abs_err_estimate=" in out and "terms_used=" in out


def test_greek_names_accepted(capsys):
    code, out = run_json(capsys, "eval", "hyp2f1_k", "k=1", "α=1", "β=1", "γ=2", "x=0.5")
    assert code == 0 and out["value"] == pytest.approx(2 * math.log(2.0))


@pytest.mark.parametrize("tokens", [["k=1", "q=2"], ["k=1", "k=2"], ["k"], ["k=abc"]])
def test_bad_assignments_rejected(tokens):
    with pytest.raises(UsageError):
        parse_assignments(tokens, ("k", "x"))


def test_unknown_parameter_rejected_before_computing(capsys, monkeypatch):
    calls = []
    monkeypatch.setitem(FUNCTIONS, "gamma_k", FUNCTIONS["gamma_k"].__class__(
        ("k", "x"), lambda a, c: calls.append(a), "spy"))
    assert main(["eval", "gamma_k", "k=2", "x=4", "y=1"]) == 2
    assert calls == []
    assert "unknown parameter 'y'" in capsys.readouterr().err


def test_missing_parameter(capsys):
    assert main(["eval", "beta_k", "k=2", "x=4"]) == 2
    assert "missing" in capsys.readouterr().err


def test_verify_examples(capsys):
    code, out = run_json(capsys, "verify", "Euler", "k=1", "alpha=1", "beta=1", "gamma=2", "x=0.25")
    assert code == 0 and out["passed"] is True
    code, out = run_json(capsys, "verify", "kummer2", "k=2", "n=2", "beta=1", "gamma=4")
    assert code == 0 and out["lhs"] == pytest.approx(0.625) and out["rhs"] == pytest.approx(0.625)
    code, out = run_json(capsys, "verify", "gf1", "k=1.5", "lambda=0.8", "alpha=1.2", "beta=2.2",
                         "x=0.2", "t=0")
    assert code == 0 and out["rel_err"] <= 1e-12


def test_verify_corrected_reading(capsys):
    args = ["verify", "gf8", "k=1.5", "lambda=0.8", "alpha=1.2", "beta=2.2", "gamma=0.7", "delta=1.9",
            "x=0.1", "y=0.15", "t=0.2"]
    assert main(args) == 1
    assert main(args + ["--reading", "corrected"]) == 0
    assert main(["verify", "kg1", "k=1", "x=2", "--reading", "corrected"]) == 2
    capsys.readouterr()


def test_verify_domain_error(capsys):
    code, out = run_json(capsys, "verify", "kpoc5", "k=2", "alpha=1", "x=0.75")
    assert code == 2 and "DomainError" in out["error"]


def test_sweep_requires_seed(capsys):
    assert main(["sweep", "kg1"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_sweep_golden_json(tmp_path):
    out = tmp_path / "kg1.json"
    code, _, _ = run("sweep", "kg1", "--samples", "100", "--seed", "7", "--format", "json",
                     "--output", str(out))
    assert code == 0
    assert out.read_bytes() == GOLDEN.read_bytes()
    report = json.loads(GOLDEN.read_text())
    assert report["passes"] == 100 and report["verdict"] == "pass" and report["failures"] == []


def test_sweep_output_is_byte_stable_across_threads(capsys, monkeypatch):
    main(["sweep", "appk9", "--samples", "12", "--seed", "3", "--format", "json", "--verbose"])
    first = capsys.readouterr().out
    monkeypatch.setenv("KSPECIAL_THREADS", "3")
    main(["sweep", "appk9", "--samples", "12", "--seed", "3", "--format", "json", "--verbose"])
    assert capsys.readouterr().out == first


def test_sweep_csv(capsys):
    assert main(["sweep", "kpoc5", "--samples", "4", "--seed", "1", "--format", "csv", "--verbose"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 4 and {"alpha", "k", "x", "lhs", "rhs", "rel_err"} <= set(rows[0])
    assert main(["sweep", "kpoc5", "--samples", "4", "--seed", "1", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1 and rows[0]["verdict"] == "pass"


def test_sweep_rel_tol_override(capsys):
    code, out = run_json(capsys, "sweep", "kg1", "--samples", "5", "--seed", "7", "--rel-tol", "1e-3")
    assert code == 0 and out["rel_tol"] == 1e-3


def test_list(capsys):
    assert main(["list", "identities"]) == 0
    text = capsys.readouterr().out
    ids = [line.split()[0] for line in text.splitlines()]
    assert ids == sorted(ids) and {f"gf{i}" for i in range(1, 10)} <= set(ids)
    code, rows = run_json(capsys, "list", "functions")
    assert code == 0 and "f4_k" in [r["id"] for r in rows]
    code, rows = run_json(capsys, "list", "identities")
    assert all(r["tag"] for r in rows) and [r["id"] for r in rows] == sorted(r["id"] for r in rows)
    assert main(["list", "things"]) == 2
    capsys.readouterr()


# one scripted scenario per exit status
@pytest.mark.parametrize("args, status", [
    (("sweep", "kg1", "--samples", "100", "--seed", "7", "--format", "json"), 0),
    (("verify", "appk11", "k=1", "alpha=1", "beta=1", "beta2=1", "gamma=2", "x=0.2", "y=0.1"), 1),
    (("eval", "gamma_k", "k=2", "x=-2"), 2),
    (("eval", "hyp2f1_k", "k=1", "alpha=1", "beta=1", "gamma=2", "x=0.5", "--max-terms", "3"), 3),
    (("sweep", "appk11", "--samples", "10", "--seed", "7", "--format", "json"), 4),
])
def test_exit_status_partition(args, status):
    code, out, err = run(*args)
    assert code == status, err
    if status == 2:
        assert "pole" in err
    if status == 4:
        report = json.loads(out)
        assert report["verdict"] == "paper-discrepancy-suspected" and report["audit"]["passed"]
