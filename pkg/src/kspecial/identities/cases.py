"""The registered identities.

Point coordinates enter the margin tests scaled by k (X = kx, Y = ky,
T = kt), since every radius of convergence here is a multiple of 1/k.
"""

from __future__ import annotations

import math

from ..appell import (AppellParams, Point2, appell_series, appell_single_sum, f1_k_integral,
                      f2_k_integral, f3_k_integral)
from ..base import EvalResult
from ..core import (beta_k_quadrature, classical_gamma, gamma_k, gamma_k_quadrature, k_binomial,
                    k_binomial_series, pochhammer, pochhammer_k)
from ..hyp import (Hyp2F1Params, gauss_sum_k, hyp2f1_k_integral, hyp2f1_k_mixed,
                   hyp2f1_k_series, terminating_mixed)
from ..kfrac import (FracOrder, _power_rule_coeff, k_binomial_power_series, kfrac_monomial,
                     kfrac_quadrature, kfrac_series, krl4_closed, krl4_termwise, krl5_closed,
                     krl5_termwise)
from . import generating as gen
from .backends import OUTER_START
from .registry import IdentityCase
from .sampling import CORE_K, MARGIN, SERIES_K, Sampler, log_uniform as lu, no_point, scaled_coords

SERIES_TOL = 1e-9
QUAD_TOL = 1e-6
GENERATING_TOL = 1e-8
TERMWISE_TOL = 1e-8

CASES: dict[str, IdentityCase] = {}


def _register(case: IdentityCase) -> None:
    if case.id in CASES:
        raise ValueError(f"duplicate identity id {case.id}")
    CASES[case.id] = case


def _coords(names: str):
    return lambda rng, p: scaled_coords(rng, p["k"], names)


def _appell(kind: str, p: dict, **over) -> AppellParams:
    q = {n: p[n] for n in ("alpha", "alpha2", "beta", "beta2", "gamma", "gamma2") if n in p}
    q.update(over)
    return AppellParams(kind, scale=p["k"], **q)


def _inside(kind: str, k: float, x: float, y: float = 0.0) -> bool:
    # k * argument within the margin of the convergence region of ``kind``
    if kind == "2F1":
        return abs(k * x) <= MARGIN
    return Point2(x, y).radius(kind, k) <= MARGIN


# --------------------------------------------------------------------- core

def _core(cid, tag, lhs, rhs, params, names, rel_tol=SERIES_TOL, integer=()):
    _register(IdentityCase(
        id=cid, group="core", tag=tag, lhs_form=lhs, rhs_form=rhs,
        sampler=Sampler(params, no_point, k_range=CORE_K), param_names=names,
        rel_tol=rel_tol, integer_params=integer))


_core("kg1", "Gamma_k(x + k) = x Gamma_k(x)",
      lambda B, p, pt: gamma_k(p["x"] + p["k"], p["k"]),
      lambda B, p, pt: p["x"] * gamma_k(p["x"], p["k"]),
      lambda rng, k: {"x": lu(rng)}, ("x", "k"))

_core("kg2", "Gamma_k(x) = k^(x/k - 1) Gamma(x/k), integral definition against the classical gamma",
      lambda B, p, pt: gamma_k_quadrature(p["x"], p["k"], B.cfg),
      lambda B, p, pt: p["k"] ** (p["x"] / p["k"] - 1.0) * classical_gamma(p["x"] / p["k"]),
      lambda rng, k: {"x": lu(rng)}, ("x", "k"), rel_tol=QUAD_TOL)

_core("kb3", "B_k(x, y) = Gamma_k(x) Gamma_k(y) / Gamma_k(x + y), integral definition on the left",
      lambda B, p, pt: beta_k_quadrature(p["x"], p["y"], p["k"], B.cfg),
      lambda B, p, pt: (gamma_k(p["x"], p["k"]) * gamma_k(p["y"], p["k"])
                        / gamma_k(p["x"] + p["y"], p["k"])),
      lambda rng, k: {"x": lu(rng), "y": lu(rng)}, ("x", "y", "k"))

_core("kb4", "B_k(x, y) = B(x/k, y/k) / k",
      lambda B, p, pt: (gamma_k(p["x"], p["k"]) * gamma_k(p["y"], p["k"])
                        / gamma_k(p["x"] + p["y"], p["k"])),
      lambda B, p, pt: (classical_gamma(p["x"] / p["k"]) * classical_gamma(p["y"] / p["k"])
                        / classical_gamma((p["x"] + p["y"]) / p["k"]) / p["k"]),
      lambda rng, k: {"x": lu(rng), "y": lu(rng)}, ("x", "y", "k"))


def _n_draw(rng, hi=15):
    return int(rng.integers(0, hi + 1))


_core("kpoc1", "(alpha)_{n,k} = Gamma_k(alpha + nk) / Gamma_k(alpha)",
      lambda B, p, pt: pochhammer_k(p["alpha"], int(p["n"]), p["k"]),
      lambda B, p, pt: (gamma_k(p["alpha"] + int(p["n"]) * p["k"], p["k"])
                        / gamma_k(p["alpha"], p["k"])),
      lambda rng, k: {"alpha": lu(rng), "n": _n_draw(rng)}, ("alpha", "n", "k"), integer=("n",))

_core("kpoc2", "(alpha)_{n,k} = k^n (alpha/k)_n",
      lambda B, p, pt: pochhammer_k(p["alpha"], int(p["n"]), p["k"]),
      lambda B, p, pt: p["k"] ** int(p["n"]) * pochhammer(p["alpha"] / p["k"], int(p["n"])),
      lambda rng, k: {"alpha": lu(rng), "n": _n_draw(rng)}, ("alpha", "n", "k"), integer=("n",))

_core("kpoc3", "(alpha)_{m+n,k} = (alpha)_{m,k} (alpha + mk)_{n,k}",
      lambda B, p, pt: pochhammer_k(p["alpha"], int(p["m"]) + int(p["n"]), p["k"]),
      lambda B, p, pt: (pochhammer_k(p["alpha"], int(p["m"]), p["k"])
                        * pochhammer_k(p["alpha"] + int(p["m"]) * p["k"], int(p["n"]), p["k"])),
      lambda rng, k: {"alpha": lu(rng), "m": _n_draw(rng, 10), "n": _n_draw(rng, 10)},
      ("alpha", "m", "n", "k"), integer=("m", "n"))

_register(IdentityCase(
    id="kpoc5", group="core", tag="sum_n (alpha)_{n,k} x^n / n! = (1 - kx)^(-alpha/k)",
    lhs_form=lambda B, p, pt: k_binomial_series(pt["x"], p["alpha"], p["k"], B.cfg),
    rhs_form=lambda B, p, pt: k_binomial(pt["x"], p["alpha"], p["k"]),
    sampler=Sampler(lambda rng, k: {"alpha": lu(rng)}, _coords("x"), k_range=CORE_K),
    param_names=("alpha", "k"), point_names=("x",), slices=("x",)))


# ---------------------------------------------------------------------- hyp

def _h(p, a="alpha", b="beta", c="gamma"):
    return Hyp2F1Params(p[a], p[b], p[c], p["k"])


_register(IdentityCase(
    id="ikhf", group="hyp",
    tag="2F1,k(alpha, beta; gamma; x) as a beta-weighted integral, gamma > beta > 0",
    lhs_form=lambda B, p, pt: hyp2f1_k_series(_h(p), pt["x"], B.cfg),
    rhs_form=lambda B, p, pt: hyp2f1_k_integral(_h(p), pt["x"], B.cfg),
    sampler=Sampler(lambda rng, k: (lambda b: {"alpha": lu(rng), "beta": b, "gamma": b + lu(rng)})(lu(rng)),
                    _coords("x")),
    param_names=("alpha", "beta", "gamma", "k"), point_names=("x",), rel_tol=QUAD_TOL,
    slices=("x",)))


UNIT_ARGUMENT_NOTE = ("the left side is displayed with an argument x that the right side ignores; "
                      "both sides are evaluated at x = 1")


def _kummer1_params(rng, k):
    alpha, beta = lu(rng), lu(rng)
    # keeps the unit-argument exponent (gamma - beta - k alpha)/k at least 1/2
    return {"alpha": alpha, "beta": beta, "gamma": beta + k * alpha + k * (0.5 + lu(rng))}


_register(IdentityCase(
    id="kummer1", group="hyp",
    tag="mixed 2F1,k at x = 1 equals Gamma_k(g) Gamma_k(g-b-k a) / (Gamma_k(g-b) Gamma_k(g-k a))",
    lhs_form=lambda B, p, pt: hyp2f1_k_mixed(p["alpha"], p["beta"], p["gamma"], p["k"], B.cfg),
    rhs_form=lambda B, p, pt: gauss_sum_k(p["alpha"], p["beta"], p["gamma"], p["k"]),
    sampler=Sampler(_kummer1_params, no_point), param_names=("alpha", "beta", "gamma", "k"),
    note=UNIT_ARGUMENT_NOTE))

_register(IdentityCase(
    id="kummer2", group="hyp",
    tag="mixed 2F1,k at alpha = -n, x = 1 equals (gamma - beta)_{n,k} / (gamma)_{n,k}",
    lhs_form=lambda B, p, pt: hyp2f1_k_mixed(-int(p["n"]), p["beta"], p["gamma"], p["k"], B.cfg),
    rhs_form=lambda B, p, pt: terminating_mixed(int(p["n"]), p["beta"], p["gamma"], p["k"]),
    sampler=Sampler(lambda rng, k: {"n": _n_draw(rng, 10), "beta": lu(rng), "gamma": lu(rng)},
                    no_point),
    param_names=("n", "beta", "gamma", "k"), integer_params=("n",), note=UNIT_ARGUMENT_NOTE))


def _euler_lhs(B, p, pt):
    return B.hyp(p["alpha"], p["beta"], p["gamma"], p["k"], pt["x"])


def _euler_rhs(B, p, pt):
    k, x = p["k"], pt["x"]
    return B.hyp(p["gamma"] - p["alpha"], p["beta"], p["gamma"], k, -x / (1 - k * x)) * (1 - k * x) ** (-p["beta"] / k)


_register(IdentityCase(
    id="Euler", group="hyp",
    tag="2F1,k(a, b; c; x) = (1 - kx)^(-b/k) 2F1,k(c - a, b; c; -x/(1 - kx))",
    lhs_form=_euler_lhs, rhs_form=_euler_rhs,
    sampler=Sampler(lambda rng, k: {"alpha": lu(rng), "beta": lu(rng), "gamma": lu(rng)},
                    _coords("x"),
                    accept=lambda p, pt: _inside("2F1", p["k"], pt["x"] / (1 - p["k"] * pt["x"]))),
    param_names=("alpha", "beta", "gamma", "k"), point_names=("x",), slices=("x",),
    backend_forms=True))


# ------------------------------------------------------------------- appell

_APPELL_NAMES = {
    "F1": ("alpha", "beta", "beta2", "gamma"),
    "F2": ("alpha", "beta", "beta2", "gamma", "gamma2"),
    "F3": ("alpha", "alpha2", "beta", "beta2", "gamma"),
    "F4": ("alpha", "beta", "gamma", "gamma2"),
}


def _free_params(kind):
    names = _APPELL_NAMES[kind]
    return lambda rng, k: {n: lu(rng) for n in names}


def _appell_point(kind):
    return lambda p, pt: _inside(kind, p["k"], pt["x"], pt["y"])


for _num, _kind in enumerate(("F1", "F2", "F3", "F4"), start=1):
    _register(IdentityCase(
        id=f"appk{_num}", group="appell",
        tag=f"{_kind},k double series equals its single-sum form over 2F1,k in y",
        lhs_form=(lambda kind: lambda B, p, pt: appell_series(_appell(kind, p), Point2(pt["x"], pt["y"]), B.cfg))(_kind),
        rhs_form=(lambda kind: lambda B, p, pt: appell_single_sum(_appell(kind, p), Point2(pt["x"], pt["y"]), B.cfg))(_kind),
        sampler=Sampler(_free_params(_kind), _coords("xy"), accept=_appell_point(_kind)),
        param_names=_APPELL_NAMES[_kind] + ("k",), point_names=("x", "y"), slices=("x", "y")))


def _ikapp_params(rng, k):
    a = lu(rng)
    return {"alpha": a, "beta": lu(rng), "beta2": lu(rng), "gamma": a + lu(rng)}


_register(IdentityCase(
    id="ikapp", group="appell",
    tag="F1,k as a single integral with weight t^(alpha/k-1) (1-t)^((gamma-alpha)/k-1)",
    lhs_form=lambda B, p, pt: appell_series(_appell("F1", p), Point2(pt["x"], pt["y"]), B.cfg),
    rhs_form=lambda B, p, pt: f1_k_integral(_appell("F1", p), Point2(pt["x"], pt["y"]), B.cfg),
    sampler=Sampler(_ikapp_params, _coords("xy"), accept=_appell_point("F1")),
    param_names=_APPELL_NAMES["F1"] + ("k",), point_names=("x", "y"), rel_tol=QUAD_TOL,
    slices=("x", "y")))


def _appk5_params(rng, k):
    b, b2 = lu(rng), lu(rng)
    return {"alpha": lu(rng), "beta": b, "beta2": b2, "gamma": b + lu(rng), "gamma2": b2 + lu(rng)}


_register(IdentityCase(
    id="appk5", group="appell", tag="F2,k as a double integral over the unit square",
    lhs_form=lambda B, p, pt: appell_series(_appell("F2", p), Point2(pt["x"], pt["y"]), B.cfg),
    rhs_form=lambda B, p, pt: f2_k_integral(_appell("F2", p), Point2(pt["x"], pt["y"]), B.cfg),
    sampler=Sampler(_appk5_params, _coords("xy"), accept=_appell_point("F2")),
    param_names=_APPELL_NAMES["F2"] + ("k",), point_names=("x", "y"), rel_tol=QUAD_TOL,
    slices=("x", "y")))


def _appk5ab_params(rng, k):
    b, b2 = lu(rng), lu(rng)
    return {"alpha": lu(rng), "alpha2": lu(rng), "beta": b, "beta2": b2, "gamma": b + b2 + lu(rng)}


_register(IdentityCase(
    id="appk5ab", group="appell", tag="F3,k as a double integral over the simplex t, s >= 0, t + s <= 1",
    lhs_form=lambda B, p, pt: appell_series(_appell("F3", p), Point2(pt["x"], pt["y"]), B.cfg),
    rhs_form=lambda B, p, pt: f3_k_integral(_appell("F3", p), Point2(pt["x"], pt["y"]), B.cfg),
    sampler=Sampler(_appk5ab_params, _coords("xy"), accept=_appell_point("F3")),
    param_names=_APPELL_NAMES["F3"] + ("k",), point_names=("x", "y"), rel_tol=QUAD_TOL,
    slices=("x", "y"),
    note="the simplex weight is (1-t-s)^((gamma-beta-beta2)/k - 1); the exponent "
         "1 - (gamma-beta-beta2)/k is inconsistent with the normalizing gammas"))


# transformations and reductions, written against the backend interface

def _F1(B, p, x, y, **over):
    q = {n: p[n] for n in ("alpha", "beta", "beta2", "gamma")}
    q.update(over)
    return B.appell("F1", p["k"], x, y, **q)


def _F2(B, p, x, y, **over):
    q = {n: p[n] for n in ("alpha", "beta", "beta2", "gamma", "gamma2")}
    q.update(over)
    return B.appell("F2", p["k"], x, y, **q)


def _f1_lhs(B, p, pt):
    return _F1(B, p, pt["x"], pt["y"])


def _f2_lhs(B, p, pt):
    return _F2(B, p, pt["x"], pt["y"])


def _appk7(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (_F1(B, p, -x / (1 - k * x), -y / (1 - k * y), alpha=p["gamma"] - p["alpha"])
            * ((1 - k * x) ** (-p["beta"] / k) * (1 - k * y) ** (-p["beta2"] / k)))


def _appk8(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (_F1(B, p, -x / (1 - k * x), -(x - y) / (1 - k * x),
                beta=p["gamma"] - p["beta"] - p["beta2"])
            * (1 - k * x) ** (-p["alpha"] / k))


def _appk9(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (_F1(B, p, -(y - x) / (1 - k * y), -y / (1 - k * y),
                beta2=p["gamma"] - p["beta"] - p["beta2"])
            * (1 - k * y) ** (-p["alpha"] / k))


def _appk10(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    a, b, b2, c = p["alpha"], p["beta"], p["beta2"], p["gamma"]
    return (_F1(B, p, x, -(y - x) / (1 - k * y), alpha=c - a, beta=c - b - b2)
            * ((1 - k * x) ** ((c - a - b) / k) * (1 - k * y) ** (-b2 / k)))


def _appk11_form(sign):
    def side(B, p, pt):
        k, x, y = p["k"], pt["x"], pt["y"]
        a, b, b2, c = p["alpha"], p["beta"], p["beta2"], p["gamma"]
        return (_F1(B, p, sign * (y - x) / (1 - k * x), y, alpha=c - a, beta2=c - b - b2)
                * ((1 - k * x) ** (-b / k) * (1 - k * y) ** ((c - a - b2) / k)))
    return side


def _appk12(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (_F2(B, p, -x / (1 - k * x), y / (1 - k * x), beta=p["gamma"] - p["beta"])
            * (1 - k * x) ** (-p["alpha"] / k))


def _appk13(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (_F2(B, p, x / (1 - k * y), -y / (1 - k * y), beta2=p["gamma2"] - p["beta2"])
            * (1 - k * y) ** (-p["alpha"] / k))


def _appk14(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    w = 1 - k * x - k * y
    return (_F2(B, p, -x / w, -y / w, beta=p["gamma"] - p["beta"], beta2=p["gamma2"] - p["beta2"])
            * w ** (-p["alpha"] / k))


def _appk15(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (B.hyp(p["alpha"], p["beta2"], p["beta"] + p["beta2"], k, -(x - y) / (1 - k * x))
            * (1 - k * x) ** (-p["alpha"] / k))


def _appk16(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return (B.hyp(p["alpha"], p["beta"], p["beta"] + p["beta2"], k, -(y - x) / (1 - k * y))
            * (1 - k * y) ** (-p["alpha"] / k))


def _appk17(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return B.hyp(p["alpha"], p["beta2"], p["gamma2"], k, y / (1 - k * x)) * (1 - k * x) ** (-p["alpha"] / k)


def _appk18(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    return B.hyp(p["alpha"], p["beta"], p["gamma"], k, x / (1 - k * y)) * (1 - k * y) ** (-p["alpha"] / k)


def _appk19(B, p, pt):
    k, x, y = p["k"], pt["x"], pt["y"]
    f3 = B.appell("F3", k, x, -y / (1 - k * y), alpha=p["alpha"], alpha2=p["gamma"] - p["alpha"],
                  beta=p["beta"], beta2=p["beta2"], gamma=p["gamma"])
    return f3 * (1 - k * y) ** (-p["beta2"] / k)


def _transform(cid, kind, tag, rhs, args, params=None, corrected=None, note=""):
    """Register a transformation; ``args(k, x, y)`` lists (kind, x, y) of every call."""
    names = _APPELL_NAMES[kind] + ("k",)
    _register(IdentityCase(
        id=cid, group="appell", tag=tag, lhs_form=_f1_lhs if kind == "F1" else _f2_lhs,
        rhs_form=rhs,
        sampler=Sampler(params or _free_params(kind), _coords("xy"),
                        accept=lambda p, pt: all(_inside(kd, p["k"], a, b)
                                                 for kd, a, b in args(p["k"], pt["x"], pt["y"]))),
        param_names=names, point_names=("x", "y"), slices=("x", "y"), backend_forms=True,
        corrected_rhs=corrected, k_power_note=note))


def _gamma_above_alpha(rng, k):
    a = lu(rng)
    return {"alpha": a, "beta": lu(rng), "beta2": lu(rng), "gamma": a + lu(rng)}


_transform("appk7", "F1",
           "F1,k(a,b,b';c;x,y) = (1-kx)^(-b/k) (1-ky)^(-b'/k) F1,k(c-a,b,b';c;-x/(1-kx),-y/(1-ky))",
           _appk7, lambda k, x, y: [("F1", x, y), ("F1", x / (1 - k * x), y / (1 - k * y))],
           params=_gamma_above_alpha)
_transform("appk8", "F1",
           "F1,k(a,b,b';c;x,y) = (1-kx)^(-a/k) F1,k(a,c-b-b',b';c;-x/(1-kx),-(x-y)/(1-kx))",
           _appk8, lambda k, x, y: [("F1", x, y), ("F1", x / (1 - k * x), (x - y) / (1 - k * x))])
_transform("appk9", "F1",
           "F1,k(a,b,b';c;x,y) = (1-ky)^(-a/k) F1,k(a,b,c-b-b';c;-(y-x)/(1-ky),-y/(1-ky))",
           _appk9, lambda k, x, y: [("F1", x, y), ("F1", (y - x) / (1 - k * y), y / (1 - k * y))])
_transform("appk10", "F1",
           "F1,k(a,b,b';c;x,y) = (1-kx)^((c-a-b)/k) (1-ky)^(-b'/k) F1,k(c-a,c-b-b',b';c;x,-(y-x)/(1-ky))",
           _appk10, lambda k, x, y: [("F1", x, y), ("F1", x, (y - x) / (1 - k * y))])
_transform("appk11", "F1",
           "F1,k(a,b,b';c;x,y) = (1-kx)^(-b/k) (1-ky)^((c-a-b')/k) F1,k(c-a,b,c-b-b';c;-(y-x)/(1-kx),y)",
           _appk11_form(-1.0), lambda k, x, y: [("F1", x, y), ("F1", (y - x) / (1 - k * x), y)],
           corrected=_appk11_form(1.0),
           note="the first argument of the transformed F1,k holds for +(y-x)/(1-kx), "
                "not -(y-x)/(1-kx); the printed sign fails at every k including k = 1")
_transform("appk12", "F2",
           "F2,k(a,b,b';c,c';x,y) = (1-kx)^(-a/k) F2,k(a,c-b,b';c,c';-x/(1-kx),y/(1-kx))",
           _appk12, lambda k, x, y: [("F2", x, y), ("F2", x / (1 - k * x), y / (1 - k * x))])
_transform("appk13", "F2",
           "F2,k(a,b,b';c,c';x,y) = (1-ky)^(-a/k) F2,k(a,b,c'-b';c,c';x/(1-ky),-y/(1-ky))",
           _appk13, lambda k, x, y: [("F2", x, y), ("F2", x / (1 - k * y), y / (1 - k * y))])
_transform("appk14", "F2",
           "F2,k(a,b,b';c,c';x,y) = (1-kx-ky)^(-a/k) F2,k(a,c-b,c'-b';c,c';-x/(1-kx-ky),-y/(1-kx-ky))",
           _appk14, lambda k, x, y: [("F2", x, y), ("F2", x / (1 - k * x - k * y), y / (1 - k * x - k * y))])


def _f1_reduced(rng, k):
    b, b2 = lu(rng), lu(rng)
    return {"alpha": lu(rng), "beta": b, "beta2": b2, "gamma": b + b2}


def _f2_gamma_is_beta(rng, k):
    b = lu(rng)
    return {"alpha": lu(rng), "beta": b, "beta2": lu(rng), "gamma": b, "gamma2": lu(rng)}


def _f2_gamma2_is_beta2(rng, k):
    b2 = lu(rng)
    return {"alpha": lu(rng), "beta": lu(rng), "beta2": b2, "gamma": lu(rng), "gamma2": b2}


_transform("appk15", "F1", "F1,k(a,b,b';b+b';x,y) = (1-kx)^(-a/k) 2F1,k(a,b';b+b';-(x-y)/(1-kx))",
           _appk15, lambda k, x, y: [("F1", x, y), ("2F1", (x - y) / (1 - k * x), 0.0)],
           params=_f1_reduced)
_transform("appk16", "F1", "F1,k(a,b,b';b+b';x,y) = (1-ky)^(-a/k) 2F1,k(a,b;b+b';-(y-x)/(1-ky))",
           _appk16, lambda k, x, y: [("F1", x, y), ("2F1", (y - x) / (1 - k * y), 0.0)],
           params=_f1_reduced)
_transform("appk17", "F2", "F2,k(a,b,b';b,c';x,y) = (1-kx)^(-a/k) 2F1,k(a,b';c';y/(1-kx))",
           _appk17, lambda k, x, y: [("F2", x, y), ("2F1", y / (1 - k * x), 0.0)],
           params=_f2_gamma_is_beta)
_transform("appk18", "F2", "F2,k(a,b,b';c,b';x,y) = (1-ky)^(-a/k) 2F1,k(a,b;c;x/(1-ky))",
           _appk18, lambda k, x, y: [("F2", x, y), ("2F1", x / (1 - k * y), 0.0)],
           params=_f2_gamma2_is_beta2)
_transform("appk19", "F1",
           "F1,k(a,b,b';c;x,y) = (1-ky)^(-b'/k) F3,k(a,c-a,b,b';c;x,-y/(1-ky))",
           _appk19, lambda k, x, y: [("F1", x, y), ("F3", x, y / (1 - k * y))])


# -------------------------------------------------------------------- kfrac

def _krl2_lhs(B, p, pt):
    return kfrac_monomial(p["eta"], FracOrder(p["mu"], p["k"]))(pt["z"])


def _krl2_form(derivative_scale):
    def side(B, p, pt):
        # m-th derivative of the order mu - mk image, with mu - mk < 0
        k, mu = p["k"], p["mu"]
        m = int(math.floor(mu / k)) + 1
        inner = kfrac_monomial(p["eta"], FracOrder(mu - m * k, k))
        factor = 1.0
        for j in range(m):
            factor *= derivative_scale(k) * (inner.exponent - j)
        return inner.coeff * factor * pt["z"] ** (inner.exponent - m)
    return side


def _classical_power_rule(B, p, pt):
    # k = 1: D^mu z^eta = Gamma(eta + 1) / Gamma(eta + 1 - mu) z^(eta - mu)
    eta, mu = p["eta"], p["mu"]
    return math.gamma(eta + 1) / math.gamma(eta + 1 - mu) * pt["z"] ** (eta - mu)


def _classical_derivative_route(B, p, pt):
    # k = 1: m-th derivative of Gamma(eta + 1) / Gamma(eta + 1 - mu + m) z^(eta - mu + m)
    eta, mu = p["eta"], p["mu"]
    m = int(math.floor(mu)) + 1
    power = eta - mu + m
    factor = 1.0
    for j in range(m):
        factor *= power - j
    return math.gamma(eta + 1) / math.gamma(power + 1) * factor * pt["z"] ** (power - m)


def _z_draw(rng, p):
    return {"z": float(rng.uniform(0.1, 2.0))}


_register(IdentityCase(
    id="krl2", group="kfrac",
    tag="positive order mu: D^mu = d^m/dz^m D^(mu - mk) on powers z^(eta/k)",
    lhs_form=_krl2_lhs, rhs_form=_krl2_form(lambda k: 1.0),
    sampler=Sampler(lambda rng, k: {"eta": lu(rng), "mu": lu(rng)}, _z_draw),
    param_names=("eta", "mu", "k"), point_names=("z",),
    classical_forms=(_classical_power_rule, _classical_derivative_route),
    corrected_rhs=_krl2_form(lambda k: k),
    k_power_note="with the gamma-ratio power rule for positive order, each z-derivative must "
                 "be taken as k d/dz; the printed plain d^m/dz^m leaves a factor k^(-m)"))


def _negative_order(rng):
    return float(rng.uniform(-2.0, -0.1))


def _krl3_rhs(B, p, pt):
    k, eta = p["k"], p["eta"]
    return kfrac_quadrature(lambda t: t ** (eta / k), pt["z"], FracOrder(p["mu"], k), B.cfg)


_register(IdentityCase(
    id="krl3", group="kfrac",
    tag="negative order: D^mu z^(eta/k) = z^((eta-mu)/k) B_k(eta + k, -mu) / Gamma_k(-mu)",
    lhs_form=_krl2_lhs, rhs_form=_krl3_rhs,
    sampler=Sampler(lambda rng, k: {"eta": lu(rng), "mu": _negative_order(rng)}, _z_draw),
    param_names=("eta", "mu", "k"), point_names=("z",), rel_tol=QUAD_TOL))


def _krl3a_lhs(B, p, pt):
    k, z = p["k"], pt["z"]
    order = FracOrder(p["mu"], k)
    f = k_binomial_power_series(p["beta"], k, z, cfg=B.cfg)
    g = kfrac_series(f, order)
    # the power-rule factor decreases in n for mu < 0, so the image tail is
    # bounded by the input tail times the first omitted factor
    n_next = len(f.coeffs)
    tail = f.tail_bound * _power_rule_coeff(n_next * k, order.mu, k) * z ** g.offset_exponent
    value = g(z)
    rounding = 4e-16 * math.sqrt(n_next) * sum(abs(c) * z ** n for n, c in enumerate(g.coeffs))
    return EvalResult(value, tail + rounding * z ** g.offset_exponent, n_next, math.isfinite(tail))


def _krl3a_rhs(B, p, pt):
    k, beta = p["k"], p["beta"]
    return kfrac_quadrature(lambda t: (1.0 - k * t) ** (-beta / k), pt["z"],
                            FracOrder(p["mu"], k), B.cfg)


_register(IdentityCase(
    id="krl3a", group="kfrac",
    tag="termwise action on a power series equals the operator on its sum, here (1 - kz)^(-beta/k)",
    lhs_form=_krl3a_lhs, rhs_form=_krl3a_rhs,
    sampler=Sampler(lambda rng, k: {"beta": lu(rng), "mu": _negative_order(rng)},
                    lambda rng, p: {"z": float(rng.uniform(0.02, MARGIN)) / p["k"]}),
    param_names=("beta", "mu", "k"), point_names=("z",), rel_tol=QUAD_TOL))


def _krl4_params(rng, k):
    eta = lu(rng)
    return {"eta": eta, "mu": eta + lu(rng), "beta": lu(rng)}


_register(IdentityCase(
    id="krl4", group="kfrac",
    tag="D^(eta-mu) {z^(eta/k-1) (1-kz)^(-beta/k)} = Gamma_k(eta)/Gamma_k(mu) z^(mu/k-1) 2F1,k(beta, eta; mu; z)",
    lhs_form=lambda B, p, pt: krl4_termwise(p["eta"], p["mu"], p["beta"], p["k"], pt["z"], B.cfg),
    rhs_form=lambda B, p, pt: krl4_closed(p["eta"], p["mu"], p["beta"], p["k"], pt["z"], B.cfg),
    sampler=Sampler(_krl4_params, lambda rng, p: {"z": float(rng.uniform(0.02, MARGIN)) / p["k"]}),
    param_names=("eta", "mu", "beta", "k"), point_names=("z",), rel_tol=TERMWISE_TOL))


def _krl5_params(rng, k):
    eta = lu(rng)
    return {"eta": eta, "mu": eta + lu(rng), "alpha": lu(rng), "beta": lu(rng),
            "a": float(rng.uniform(-1.0, 1.0)), "b": float(rng.uniform(-1.0, 1.0))}


_register(IdentityCase(
    id="krl5", group="kfrac",
    tag="D^(eta-mu) {z^(eta/k-1) (1-kaz)^(-alpha/k) (1-kbz)^(-beta/k)} = "
        "Gamma_k(eta)/Gamma_k(mu) z^(mu/k-1) F1,k(eta, alpha, beta; mu; az, bz)",
    lhs_form=lambda B, p, pt: krl5_termwise(p["eta"], p["mu"], p["alpha"], p["beta"], p["a"], p["b"],
                                            p["k"], pt["z"], B.cfg),
    rhs_form=lambda B, p, pt: krl5_closed(p["eta"], p["mu"], p["alpha"], p["beta"], p["a"], p["b"],
                                          p["k"], pt["z"], B.cfg),
    sampler=Sampler(_krl5_params, lambda rng, p: {"z": float(rng.uniform(0.02, 1.0)) / p["k"]},
                    accept=lambda p, pt: max(abs(p["a"]), abs(p["b"])) * p["k"] * pt["z"] <= MARGIN),
    param_names=("eta", "mu", "alpha", "beta", "a", "b", "k"), point_names=("z",),
    rel_tol=TERMWISE_TOL))


# --------------------------------------------------------------- generating

def _ok(*values) -> bool:
    return all(math.isfinite(v) and abs(v) <= MARGIN for v in values)


def _gf_accept(rel):
    def accept(p, pt):
        k = p["k"]
        X, Y, T = k * pt["x"], k * pt.get("y", 0.0), k * pt["t"]
        K = max(1.0, k)
        # left-side convergence of the outer sums
        if rel == "gf1":
            return _ok(X, X / (1 - T), T / (1 - abs(X)))
        if rel == "gf2":
            return _ok(X, T * (1 + abs(X)), X * T / (1 - T))
        if rel == "gf3":
            w = 1 - T + X * T
            return w > 0 and _ok(X, T * (1 + abs(X)), X / w)
        if rel == "gf4":
            return _ok(X, T * (1 + abs(X)), (1 - X) * T)
        if rel == "gf5":
            x = pt["x"]
            return (_ok(X, Y, T * (1 + abs(Y)) / (1 - abs(X)), (abs(X) + abs(Y * T)) / (1 - T))
                    and abs(x) < 1 and _ok((1 - Y) * T / (1 - x), (1 - Y) * T / (1 - X)))
        if rel == "gf6":
            return _ok(X, Y, T * (1 + abs(X)) * (1 + abs(Y)),
                       abs(X) / ((1 - X) * (1 - T)) + abs(Y * T / (1 - T)))
        lhs_ok = _ok(X, Y, T / ((1 - abs(X)) * (1 - abs(Y))))
        if rel == "gf7":
            xs, ys = abs(X) / (1 - T), K * abs(Y) / (1 - T)
            return (lhs_ok and _ok(xs + ys)
                    and _ok(abs(X * Y) / (1 - T) / (1 - xs - ys) ** 2))
        if rel == "gf8":
            xs, ys = X / (1 - T), Y / (1 - T)
            return (lhs_ok and _ok(xs, ys)
                    and _ok(K * abs(X * Y * T) / (1 - T) ** 2 / ((1 - abs(xs)) * (1 - abs(ys))) ** 2))
        a, b = 1 - T - X, 1 - T - Y
        return lhs_ok and a > 0 and b > 0 and _ok(K * X * Y * T / (a * b))
    return accept


_GF_NAMES = {
    "gf1": ("lambda", "alpha", "beta"),
    "gf2": ("lambda", "rho", "alpha", "beta"),
    "gf3": ("rho", "alpha", "beta"),
    "gf4": ("alpha", "beta", "gamma", "delta"),
    "gf5": ("lambda", "alpha", "beta", "gamma", "delta"),
    "gf6": ("rho", "alpha", "beta", "gamma", "delta"),
    "gf7": ("lambda", "alpha", "beta", "gamma", "delta"),
    "gf8": ("lambda", "alpha", "beta", "gamma", "delta"),
    "gf9": ("lambda", "alpha", "gamma"),
}

_GF_POINT = {"gf1": "xt", "gf2": "xt", "gf3": "xt", "gf4": "xt"}

_GF_TAGS = {
    "gf1": "sum (lambda)_{n,k} 2F1,k(lambda+nk, alpha; beta; x) t^n/n! = "
           "(1-kt)^(-lambda/k) 2F1,k(lambda, alpha; beta; x/(1-kt))",
    "gf2": "sum (lambda)_{n,k} 2F1,k(rho-nk, alpha; beta; x) t^n/n! = "
           "(1-kt)^(-lambda/k) F1,k(alpha, rho, lambda; beta; x, -kxt/(1-kt))",
    "gf3": "sum (beta-rho)_{n,k} 2F1,k(rho-nk, alpha; beta; x) t^n/n! = "
           "(1-kt)^((alpha+rho-beta)/k) (1-kt+k^2xt)^(-alpha/k) 2F1,k(alpha, rho; beta; x/(1-kt+k^2xt))",
    "gf4": "sum (beta)_{n,k}(gamma)_{n,k}/(delta)_{n,k} 2F1,k(-nk, alpha; beta; x) t^n/n! = "
           "F1,k(gamma, beta-alpha, alpha; delta; t, (1-kx)t)",
    "gf5": "sum (lambda)_{n,k} 2F1,k(lambda+nk, alpha; beta; x) 2F1,k(-nk, gamma; delta; y) t^n/n! = "
           "(1-kt)^(-lambda/k) F2,k(lambda, alpha, gamma; beta, delta; x/(1-kt), -kyt/(1-kt))",
    "gf6": "sum (beta-rho)_{n,k} 2F1,k(rho-nk, alpha; beta; x) 2F1,k(-nk, gamma; delta; y) t^n/n! = "
           "(1-kx)^(-alpha/k) (1-kt)^((rho-beta)/k) "
           "F2,k(beta-rho, alpha, gamma; beta, delta; -x/((1-kx)(1-kt)), -kyt/(1-kt))",
    "gf7": "bilinear sum (lambda)_{n,k} 2F1,k(lambda+nk, alpha; beta; x) 2F1,k(lambda+nk, gamma; delta; y) t^n/n! "
           "as an F2,k series in -kxy/(1-kt)",
    "gf8": "the same bilinear sum as a series in k^3 xyt/(1-kt)^2 over products of two 2F1,k",
    "gf9": "the bilinear sum with beta = delta = lambda in closed form with a 2F1,k of "
           "k^3 xyt/((1-kt-kx)(1-kt-ky))",
}

_GF_NOTES = {
    "gf7": "the right side holds with (gamma)_{n,k}/(delta)_{n,k} added to the weight and "
           "y/(1-kt) as the second F2,k argument in place of -ky/(1-kt)",
    "gf8": "the outer argument holds with k^2 xyt/(1-kt)^2; three k-symbols over two leave "
           "a net k^n in the weight, so the printed k^3 double counts it",
    "gf9": "the 2F1,k argument holds with k^2 xyt/((1-kt-kx)(1-kt-ky)), by the same count",
}


def _gf_form(table, rel):
    fn = table[rel]
    return lambda B, p, pt: fn(B, p, pt["x"], pt["y"], pt["t"])


for _rel in gen.LHS:
    _names = _GF_NAMES[_rel]
    _register(IdentityCase(
        id=_rel, group="generating", tag=_GF_TAGS[_rel],
        lhs_form=_gf_form(gen.LHS, _rel), rhs_form=_gf_form(gen.RHS, _rel),
        sampler=Sampler((lambda names: lambda rng, k: {n: lu(rng) for n in names})(_names),
                        _coords(_GF_POINT.get(_rel, "xyt")), accept=_gf_accept(_rel)),
        param_names=_names + ("k",), point_names=tuple(_GF_POINT.get(_rel, "xyt")),
        rel_tol=GENERATING_TOL, n_terms_outer=OUTER_START,
        slices=("t", "x"), backend_forms=True,
        corrected_rhs=_gf_form(gen.CORRECTED_RHS, _rel) if _rel in gen.CORRECTED_RHS else None,
        k_power_note=_GF_NOTES.get(_rel, "")))
