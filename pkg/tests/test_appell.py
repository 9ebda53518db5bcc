import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from kspecial.appell import (AppellParams, Point2, appell_series, appell_single_sum, f1_k,
                             f1_k_integral, f2_k_integral, f3_k_integral)
from kspecial.base import DomainError, EvalConfig
from kspecial.hyp import Hyp2F1Params, hyp2f1_k_integral, hyp2f1_k_series

positive = st.floats(0.1, 5.0)
scales = st.floats(0.5, 2.0)
unit = st.floats(-1.0, 1.0)

# brute-force double sum to m + n <= 80 at 30 digits
F2_FIXTURE = 1.2673946888741056
F1_FIXTURE = 1.1134087132719538


def classical(p: AppellParams, pt: Point2) -> float:
    k = p.k
    a, a2, b, b2, c, c2 = (v / k for v in (p.alpha, p.alpha2, p.beta, p.beta2, p.gamma, p.gamma2))
    X, Y = k * pt.x, k * pt.y
    if p.kind == "F1":
        return float(mpmath.appellf1(a, b, b2, c, X, Y))
    if p.kind == "F2":
        return float(mpmath.appellf2(a, b, b2, c, c2, X, Y))
    if p.kind == "F3":
        return float(mpmath.appellf3(a, a2, b, b2, c, X, Y))
    return float(mpmath.appellf4(a, b, c, c2, X, Y))


def point_in(kind, k, u, v, size=0.5):
    """Point at half the radius of convergence in the kind's norm."""
    if kind in ("F1", "F3"):
        X, Y = size * u, size * v
    elif kind == "F2":
        X, Y = size * u / 2, size * v / 2
    else:
        X, Y = size * u * abs(u) / 4, size * v * abs(v) / 4
    return Point2(X / k, Y / k)


@st.composite
def appell_draw(draw, kinds=("F1", "F2", "F3", "F4")):
    kind = draw(st.sampled_from(kinds))
    k = draw(scales)
    vals = [draw(positive) for _ in range(6)]
    p = AppellParams(kind, vals[0], vals[1], vals[2], alpha2=vals[3], beta2=vals[4], gamma2=vals[5], scale=k)
    return p, point_in(kind, k, draw(unit), draw(unit))


def close(a, b, tol, *errs):
    return abs(a - b) <= tol * max(1.0, abs(b)) + sum(errs)


@pytest.mark.parametrize("kind", ["F1", "F2", "F3", "F4"])
def test_origin_is_one(kind):
    p = AppellParams(kind, 1.3, 0.7, 2.1, alpha2=0.4, beta2=1.9, gamma2=3.3, scale=1.6)
    assert appell_series(p, Point2(0.0, 0.0)).value == 1.0
    assert appell_single_sum(p, Point2(0.0, 0.0)).value == pytest.approx(1.0, abs=1e-15)


def test_f1_axis_is_hyp2f1():
    p = AppellParams("F1", 1.3, 0.7, 2.1, beta2=1.9, scale=1.0)
    ref = hyp2f1_k_series(Hyp2F1Params(1.3, 0.7, 2.1, 1.0), 0.3).value
    assert appell_series(p, Point2(0.3, 0.0)).value == pytest.approx(ref, rel=1e-13)


def test_f2_fixture():
    p = AppellParams("F2", 1, 1, 2, beta2=1, gamma2=3, scale=1)
    assert appell_series(p, Point2(0.2, 0.3)).value == pytest.approx(F2_FIXTURE, rel=1e-13)


def test_f1_fixture_series_and_single_sum():
    p = AppellParams("F1", 1, 1, 3, beta2=1, scale=1)
    pt = Point2(0.2, 0.1)
    assert appell_series(p, pt).value == pytest.approx(F1_FIXTURE, rel=1e-13)
    assert appell_single_sum(p, pt).value == pytest.approx(F1_FIXTURE, rel=1e-13)
    assert abs(f1_k_integral(p, pt).value - F1_FIXTURE) <= 1e-6


def test_single_sum_axis_cases():
    p3 = AppellParams("F3", 1.1, 0.6, 2.4, alpha2=0.9, beta2=1.7, scale=1.3)
    ref3 = hyp2f1_k_series(Hyp2F1Params(0.9, 1.7, 2.4, 1.3), 0.2).value
    assert appell_single_sum(p3, Point2(0.0, 0.2)).value == pytest.approx(ref3, rel=1e-13)
    p4 = AppellParams("F4", 1.1, 0.6, 2.4, gamma2=1.7, scale=1.3)
    ref4 = hyp2f1_k_series(Hyp2F1Params(1.1, 0.6, 2.4, 1.3), 0.1).value
    assert appell_single_sum(p4, Point2(0.1, 0.0)).value == pytest.approx(ref4, rel=1e-13)


@pytest.mark.parametrize("kind, pt", [("F1", Point2(0.6, 0.1)), ("F2", Point2(0.3, 0.3)),
                                      ("F3", Point2(0.1, -0.55)), ("F4", Point2(0.2, 0.1))])
def test_domain_rejected(kind, pt):
    p = AppellParams(kind, 1, 1, 2, alpha2=1, beta2=1, gamma2=2, scale=2.0)
    with pytest.raises(DomainError):
        appell_series(p, pt)


def test_f4_domain_is_square_root_norm():
    # kx = 0.09, ky = 0.16: sqrt|kx| + sqrt|ky| = 0.7, reported squared
    assert Point2(0.045, 0.08).radius("F4", 2.0) == pytest.approx(0.49)


def test_denominator_pole_rejected():
    with pytest.raises(DomainError):
        AppellParams("F2", 1, 1, 2, gamma2=-3.0, scale=1.5)


@settings(max_examples=60, deadline=None)
@given(appell_draw())
def test_series_against_classical(draw):
    p, pt = draw
    res = appell_series(p, pt)
    assert res.converged
    assert close(res.value, classical(p, pt), 1e-10, res.abs_err_estimate)


@settings(max_examples=60, deadline=None)
@given(appell_draw())
def test_series_matches_single_sum(draw):
    p, pt = draw
    s, t = appell_series(p, pt), appell_single_sum(p, pt)
    assert close(s.value, t.value, 1e-11, s.abs_err_estimate, t.abs_err_estimate)


@settings(max_examples=50)
@given(appell_draw(("F1",)))
def test_f1_symmetry(draw):
    p, pt = draw
    q = AppellParams("F1", p.alpha, p.beta2, p.gamma, beta2=p.beta, scale=p.scale)
    a, b = appell_series(p, pt).value, appell_series(q, Point2(pt.y, pt.x)).value
    assert close(a, b, 1e-12)


@settings(max_examples=50)
@given(appell_draw(("F3",)))
def test_f3_symmetry(draw):
    p, pt = draw
    q = AppellParams("F3", p.alpha2, p.beta2, p.gamma, alpha2=p.alpha, beta2=p.beta, scale=p.scale)
    a, b = appell_series(p, pt).value, appell_series(q, Point2(pt.y, pt.x)).value
    assert close(a, b, 1e-12)


@settings(max_examples=50)
@given(a=positive, b=positive, b2=positive, c=positive, k=scales, u=unit)
def test_diagonal_collapse(a, b, b2, c, k, u):
    x = 0.5 * u / k
    lhs = f1_k(a, b, b2, c, k, x, x)
    rhs = hyp2f1_k_series(Hyp2F1Params(a, b + b2, c, k), x)
    assert close(lhs.value, rhs.value, 1e-9, lhs.abs_err_estimate, rhs.abs_err_estimate)


def test_f1_integral_axis_matches_hyp_integral():
    p = AppellParams("F1", 1.2, 0.8, 3.1, beta2=1.4, scale=1.5)
    ref = hyp2f1_k_integral(Hyp2F1Params(0.8, 1.2, 3.1, 1.5), 0.2).value
    assert abs(f1_k_integral(p, Point2(0.2, 0.0)).value - ref) <= 1e-6


@pytest.mark.parametrize("fn, p", [
    (f1_k_integral, AppellParams("F1", 1.2, 0.8, 3.1, beta2=1.4, scale=1.5)),
    (f2_k_integral, AppellParams("F2", 1.2, 0.8, 3.1, beta2=1.4, gamma2=2.5, scale=1.5)),
    (f3_k_integral, AppellParams("F3", 1.2, 0.8, 3.1, alpha2=0.6, beta2=1.4, scale=1.5)),
])
def test_integrals_at_origin(fn, p):
    assert abs(fn(p, Point2(0.0, 0.0)).value - 1.0) <= 1e-6


def test_integral_axis_reductions():
    p2 = AppellParams("F2", 1.2, 0.8, 3.1, beta2=1.4, gamma2=2.5, scale=1.5)
    ref2 = hyp2f1_k_series(Hyp2F1Params(1.2, 0.8, 3.1, 1.5), 0.2).value
    assert abs(f2_k_integral(p2, Point2(0.2, 0.0)).value - ref2) <= 1e-6
    p3 = AppellParams("F3", 1.2, 0.8, 3.1, alpha2=0.6, beta2=1.4, scale=1.5)
    ref3 = hyp2f1_k_series(Hyp2F1Params(0.6, 1.4, 3.1, 1.5), 0.3).value
    assert abs(f3_k_integral(p3, Point2(0.0, 0.3)).value - ref3) <= 1e-6


@pytest.mark.parametrize("fn, p", [
    (f1_k_integral, AppellParams("F1", 2.0, 0.8, 1.5, beta2=1.4)),
    (f2_k_integral, AppellParams("F2", 1.0, 0.8, 3.1, beta2=1.4, gamma2=1.0)),
    (f3_k_integral, AppellParams("F3", 1.0, 1.5, 2.5, alpha2=1.0, beta2=1.4)),
])
def test_integral_preconditions(fn, p):
    with pytest.raises(DomainError):
        fn(p, Point2(0.1, 0.1))


@settings(max_examples=25, deadline=None)
@given(draw=appell_draw(("F1", "F2", "F3")), gaps=st.tuples(positive, positive))
def test_integrals_match_series(draw, gaps):
    p, pt = draw
    g1, g2 = gaps
    if p.kind == "F1":
        p = AppellParams("F1", p.alpha, p.beta, p.alpha + g1, beta2=p.beta2, scale=p.scale)
        fn = f1_k_integral
    elif p.kind == "F2":
        p = AppellParams("F2", p.alpha, p.beta, p.beta + g1, beta2=p.beta2, gamma2=p.beta2 + g2,
                         scale=p.scale)
        fn = f2_k_integral
    else:
        p = AppellParams("F3", p.alpha, p.beta, p.beta + p.beta2 + g1, alpha2=p.alpha2,
                         beta2=p.beta2, scale=p.scale)
        fn = f3_k_integral
    s, q = appell_series(p, pt), fn(p, pt)
    assert abs(s.value - q.value) <= max(1e-6, s.abs_err_estimate + q.abs_err_estimate) * max(1.0, abs(s.value))


def test_budget_exhaustion_flags_nonconvergence():
    p = AppellParams("F2", 3, 3, 0.5, beta2=3, gamma2=0.5, scale=1)
    res = appell_series(p, Point2(0.45, 0.45), EvalConfig(max_terms=50))
    assert not res.converged
    assert math.isfinite(res.value)


def test_f3_simplex_weight_exponent():
    a, a2, b, b2, c, x, y = 0.7, 1.2, 0.9, 0.8, 2.9, 0.2, -0.15
    series = appell_series(AppellParams("F3", a, b, c, alpha2=a2, beta2=b2, scale=1.0), Point2(x, y)).value
    norm = mpmath.gamma(c) / (mpmath.gamma(b) * mpmath.gamma(b2) * mpmath.gamma(c - b - b2))

    def simplex(e):
        # s = (1 - t) u keeps the simplex weight nonnegative at the quadrature nodes
        def f(t, u):
            s, w = (1 - t) * u, (1 - t) * (1 - u)
            return (1 - t) * t ** (b - 1) * s ** (b2 - 1) * w ** e * (1 - x * t) ** -a * (1 - y * s) ** -a2
        return float(norm * mpmath.quad(f, [0, 1], [0, 1]))

    assert simplex(c - b - b2 - 1) == pytest.approx(series, rel=1e-9)
    assert abs(simplex(1 - (c - b - b2)) - series) > 0.5
