import json
import math

import pytest

from kspecial.base import DomainError
from kspecial.hyp import Hyp2F1Params, hyp2f1_k_series
from kspecial.identities import CASES, generating_lhs, sweep, verify_identity
from kspecial.identities import generating as gen
from kspecial.identities.approx import Approx
from kspecial.identities.backends import AlternateBackend, BruteForceBackend, SeriesBackend
from kspecial.identities.registry import compare, rel_err
from kspecial.identities.report import dumps, sweep_csv, sweep_dict
from kspecial.identities.sweep import DISCREPANCY, PASS, sample_rng

# every two-sided statement the library registers under its own id
REQUIRED_IDS = (
    {"kg1", "kb3", "kpoc1", "kpoc2", "kpoc3", "kpoc5", "ikhf", "kummer1", "kummer2", "ikapp",
     "appk5", "appk5ab", "Euler", "krl3", "krl4", "krl5"}
    | {f"appk{i}" for i in range(7, 20)}
    | {f"gf{i}" for i in range(1, 10)}
)
# closed-form companions and single-sum definitions checked alongside
EXTRA_IDS = {"kg2", "kb4", "krl2", "krl3a", "appk1", "appk2", "appk3", "appk4"}
FLAGGED = {"appk11", "krl2", "gf7", "gf8", "gf9"}
GENERATING = [f"gf{i}" for i in range(1, 10)]


def value(side):
    return Approx.of(side).result().value


def test_registry_is_exhaustive():
    assert set(CASES) == REQUIRED_IDS | EXTRA_IDS


def test_registry_metadata():
    for cid, case in CASES.items():
        assert case.id == cid
        assert case.group in {"core", "hyp", "appell", "kfrac", "generating"}
        assert case.tag and case.rel_tol > 0
        assert set(case.slices) <= set(case.point_names)
        if case.group == "generating":
            assert case.n_terms_outer > 0


def test_flagged_cases_carry_corrected_readings():
    assert {c.id for c in CASES.values() if c.corrected_rhs is not None} == FLAGGED
    for cid in FLAGGED:
        assert CASES[cid].auditable and CASES[cid].k_power_note


@pytest.mark.parametrize("cid", sorted(CASES))
def test_sampler_respects_preconditions(cid):
    case = CASES[cid]
    for i in range(5):
        params, point = case.sampler(sample_rng(11, i))
        rec = verify_identity(case, params, point)
        assert rec.error is None, rec.error
        assert math.isfinite(rec.lhs) and math.isfinite(rec.rhs)


def test_euler_at_origin():
    rec = verify_identity(CASES["Euler"], {"k": 1.3, "alpha": 0.7, "beta": 2.1, "gamma": 1.9}, {"x": 0.0})
    assert rec.lhs == rec.rhs == 1.0 and rec.passed


def test_gf1_at_t_zero_is_one_hyp2f1():
    params = {"k": 1.4, "lambda": 0.9, "alpha": 1.7, "beta": 2.6}
    rec = verify_identity(CASES["gf1"], params, {"x": 0.2, "t": 0.0})
    ref = hyp2f1_k_series(Hyp2F1Params(0.9, 1.7, 2.6, 1.4), 0.2).value
    assert rec.passed and rec.rel_err <= 1e-12
    assert rec.lhs == pytest.approx(ref, rel=1e-13)


def test_kpoc5_example():
    rec = verify_identity(CASES["kpoc5"], {"k": 2.0, "alpha": 2.0}, {"x": 0.25})
    assert rec.lhs == pytest.approx(2.0, rel=1e-12) and rec.rhs == pytest.approx(2.0, rel=1e-15)
    assert rec.passed


def test_domain_errors_are_sample_errors():
    rec = verify_identity(CASES["kpoc5"], {"k": 2.0, "alpha": 2.0}, {"x": 0.75})
    assert not rec.passed and rec.error and "DomainError" in rec.error
    assert math.isnan(rec.rel_err)


def test_unknown_and_missing_names_rejected():
    with pytest.raises(ValueError, match="unknown"):
        verify_identity(CASES["kpoc5"], {"k": 2.0, "alpha": 2.0, "q": 1.0}, {"x": 0.1})
    with pytest.raises(ValueError, match="missing"):
        verify_identity(CASES["kpoc5"], {"k": 2.0}, {"x": 0.1})
    with pytest.raises(DomainError):
        verify_identity(CASES["kummer2"], {"k": 2.0, "n": 1.5, "beta": 1.0, "gamma": 4.0}, {})


def test_rel_err_blends_absolute_and_relative():
    assert rel_err(1e-20, 2e-20) == pytest.approx(1e-20)
    assert rel_err(1e6, 1e6 + 1) == pytest.approx(1e-6, rel=1e-6)


@pytest.mark.parametrize("cid, coord", sorted((c.id, s) for c in CASES.values() for s in c.slices))
def test_degenerate_slices(cid, coord):
    case = CASES[cid]
    reading = "corrected" if cid in FLAGGED else "printed"
    for i in range(5):
        params, point = case.sampler(sample_rng(5, i))
        point = dict(point, **{coord: 0.0})
        rec = verify_identity(case, params, point, rhs_reading=reading)
        assert rec.rel_err <= 1e-12, (params, point, rec)


@pytest.mark.parametrize("cid", ["appk11", "gf7"])
def test_printed_form_fails_on_slices_too(cid):
    case = CASES[cid]
    params, point = case.sampler(sample_rng(5, 0))
    point = dict(point, **{case.slices[0]: 0.0})
    assert not verify_identity(case, params, point).passed


@pytest.mark.parametrize("cid", sorted(FLAGGED))
def test_corrected_readings_hold(cid):
    case = CASES[cid]
    for i in range(10):
        params, point = case.sampler(sample_rng(13, i))
        assert not verify_identity(case, params, point).passed
        assert verify_identity(case, params, point, rhs_reading="corrected").passed


@pytest.mark.parametrize("cid", GENERATING)
def test_tail_bound_honesty(cid):
    case = CASES[cid]
    for i in range(8):
        params, point = case.sampler(sample_rng(17, i))
        x, y, t = (point.get(n, 0.0) for n in "xyt")
        for n in (20, 40):
            short = generating_lhs(cid, params, x, y, t, n_terms=n, adaptive=False)
            long = generating_lhs(cid, params, x, y, t, n_terms=2 * n, adaptive=False)
            assert abs(short.value - long.value) <= short.abs_err_estimate + 1e-15, (params, point, n)


def test_generating_lhs_examples():
    p = {"k": 1.5, "lambda": 0.8, "alpha": 1.2, "beta": 2.2}
    one = generating_lhs("gf1", p, x=0.2, t=0.0)
    assert one.value == pytest.approx(hyp2f1_k_series(Hyp2F1Params(0.8, 1.2, 2.2, 1.5), 0.2).value, rel=1e-14)
    binomial = generating_lhs("gf1", p, x=0.0, t=0.25)
    assert binomial.value == pytest.approx((1 - 1.5 * 0.25) ** (-0.8 / 1.5), rel=1e-12)
    assert binomial.converged
    with pytest.raises(KeyError):
        generating_lhs("gf10", p)


def test_generating_lhs_flags_short_truncation():
    p = {"k": 1.0, "lambda": 2.5, "alpha": 1.2, "beta": 2.2}
    res = generating_lhs("gf1", p, x=0.1, t=0.45, n_terms=5, adaptive=False)
    assert not res.converged


def test_gf9_lhs_matches_classical_closed_form_at_k1():
    # at k = 1 both powers of k agree, so the printed right side is the classical bilinear form
    p = {"k": 1.0, "lambda": 1.3, "alpha": 0.7, "gamma": 2.1}
    x, y, t = 0.15, -0.1, 0.2
    brute = BruteForceBackend()
    lhs = gen.gf9_lhs(brute, p, x, y, t)
    rhs = gen.gf9_rhs(SeriesBackend(), p, x, y, t)
    assert value(lhs) == pytest.approx(value(rhs), rel=1e-10)


@pytest.mark.parametrize("cid", ["gf2", "gf5", "gf8"])
def test_backends_agree(cid):
    case = CASES[cid]
    params, point = case.sampler(sample_rng(23, 0), k=1.0)
    sides = [case.lhs(params, point, route=r) for r in ("primary", "alternate", "bruteforce")]
    for other in sides[1:]:
        assert compare(sides[0], other, 1e-9)[1]


def test_brute_force_survives_deep_tables():
    b = BruteForceBackend()
    assert math.isfinite(value(b.hyp(150.0, 140.0, 160.0, 1.0, 0.3)))
    assert value(b.hyp(-2.0, 1.0, 3.0, 1.0, 0.5)) == pytest.approx(1 - 2 / 3 * 0.5 + 2 / 12 * 0.25)


def test_alternate_hyp_survives_large_parameters():
    res = AlternateBackend().hyp(210.0, 3.0, 205.0, 1.5, 0.3)
    assert math.isfinite(value(res))


def test_sweep_invariants_and_determinism():
    case = CASES["appk15"]
    a = sweep(case, 30, 7)
    b = sweep(case, 30, 7, threads=4)
    assert a.passes + len(a.failures) == a.samples == 30
    assert (a.verdict == PASS) == (not a.failures)
    assert dumps(sweep_dict(a, verbose=True)) == dumps(sweep_dict(b, verbose=True))
    assert sweep_csv(a, verbose=True) == sweep_csv(b, verbose=True)
    assert a.verdict == PASS


def test_sweep_seed_changes_draws():
    a, b = sweep(CASES["kg1"], 5, 1), sweep(CASES["kg1"], 5, 2)
    assert a.records[0].params != b.records[0].params


def test_sweep_rejects_empty():
    with pytest.raises(ValueError):
        sweep(CASES["kg1"], 0, 7)


def test_discrepancy_verdict_and_audit():
    rep = sweep(CASES["krl2"], 20, 7)
    assert rep.verdict == DISCREPANCY and rep.passes == 0
    audit = rep.audit
    assert audit["passed"] and audit["components_agree_at_k1"]
    assert audit["printed_holds_at_k1"] and audit["corrected_holds_on_failures"]
    assert audit["residual_pattern"].startswith("fails for k != 1 only")
    assert "k^(-m)" in audit["corrected_reading"]


def test_unauditable_systematic_failure_is_plain_fail():
    import dataclasses
    case = CASES["kpoc5"]
    broken = dataclasses.replace(case, rhs_form=lambda B, p, pt: 2.0 + pt["x"])
    rep = sweep(broken, 10, 7)
    assert rep.verdict == "fail" and rep.audit is None


def test_json_rendering_is_canonical():
    text = dumps({"b": [1.0, math.nan, 0.1], "a": {"z": True, "y": None}, "c": 3})
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "0.10000000000000001" in text and "null" in text
    assert json.loads(text)["b"] == [1.0, None, 0.1]


@pytest.mark.parametrize("cid", ["kummer1", "kummer2", "appk5ab"])
def test_reports_carry_reading_notes(cid):
    rep = sweep(CASES[cid], 3, 7)
    assert rep.note and sweep_dict(rep)["note"] == rep.note
    assert "note" not in sweep_dict(sweep(CASES["kg1"], 3, 7))
