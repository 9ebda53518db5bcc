"""Appell k-functions F1,k to F4,k.

Double series (all symbols are k-symbols, every term also carries
x^m y^n / (m! n!)):

    F1,k  (alpha)_{m+n} (beta)_m (beta')_n / (gamma)_{m+n}
    F2,k  (alpha)_{m+n} (beta)_m (beta')_n / ((gamma)_m (gamma')_n)
    F3,k  (alpha)_m (alpha')_n (beta)_m (beta')_n / (gamma)_{m+n}
    F4,k  (alpha)_{m+n} (beta)_{m+n} / ((gamma)_m (gamma')_n)

The double sums are taken over shells of constant total degree m + n, each
shell built from the previous one with the term ratio in n, so the whole
evaluation is a short loop over numpy vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, Scale, as_k
from .core import beta_k, gamma_k, is_pole, rgamma_k
from .hyp import Hyp2F1Params, hyp2f1_k_series
from .quadrature import integrate_beta, integrate_beta2

__all__ = [
    "AppellParams", "Point2", "KINDS", "appell_series", "appell_single_sum",
    "f1_k_integral", "f2_k_integral", "f3_k_integral", "f1_k", "f2_k", "f3_k", "f4_k",
    "reduce_to_hyp2f1",
]

KINDS = ("F1", "F2", "F3", "F4")

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class AppellParams:
    """Parameters of one Appell k-function.

    Fields a kind does not use are ignored: ``alpha2`` belongs to F3 only,
    ``beta2`` is unused by F4 and ``gamma2`` appears in F2 and F4.
    """

    kind: str
    alpha: float
    beta: float
    gamma: float
    alpha2: float = 0.0
    beta2: float = 0.0
    gamma2: float = 1.0
    scale: Scale | float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown Appell kind {self.kind!r}")
        k = as_k(self.scale)
        for name in self.denominator_names():
            value = getattr(self, name)
            if is_pole(value / k):
                raise DomainError(f"{name}/k must not be zero or a negative integer, got {value / k!r}")

    @property
    def k(self) -> float:
        return as_k(self.scale)

    def denominator_names(self):
        return ("gamma", "gamma2") if self.kind in ("F2", "F4") else ("gamma",)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def radius(self, kind: str, k: float) -> float:
        """Size of the point in the norm whose unit ball is the domain of ``kind``."""
        ax, ay = abs(k * self.x), abs(k * self.y)
        if kind in ("F1", "F3"):
            return max(ax, ay)
        if kind == "F2":
            return ax + ay
        # F4: sqrt|kx| + sqrt|ky| < 1
        return (math.sqrt(ax) + math.sqrt(ay)) ** 2

    def check(self, kind: str, k: float) -> None:
        if not self.radius(kind, k) < 1.0:
            raise DomainError(f"point ({self.x!r}, {self.y!r}) lies outside the {kind},k "
                              f"convergence region for k={k!r}")


def reduce_to_hyp2f1(p: AppellParams, pt: Point2) -> tuple[Hyp2F1Params, float] | None:
    """The 2F1,k that an Appell function collapses to on an axis, else None."""
    k = p.k
    if pt.y == 0.0:
        return Hyp2F1Params(p.alpha, p.beta, p.gamma, k), pt.x
    if pt.x == 0.0:
        if p.kind == "F1":
            return Hyp2F1Params(p.alpha, p.beta2, p.gamma, k), pt.y
        if p.kind == "F2":
            return Hyp2F1Params(p.alpha, p.beta2, p.gamma2, k), pt.y
        if p.kind == "F3":
            return Hyp2F1Params(p.alpha2, p.beta2, p.gamma, k), pt.y
        return Hyp2F1Params(p.alpha, p.beta, p.gamma2, k), pt.y
    return None


def _shell_step(p: AppellParams, m: np.ndarray, n: np.ndarray, y: float) -> np.ndarray:
    # T(m, n+1) / T(m, n)
    k = p.k
    tot = (m + n) * k
    if p.kind == "F1":
        return (p.alpha + tot) * (p.beta2 + n * k) / ((p.gamma + tot) * (n + 1.0)) * y
    if p.kind == "F2":
        return (p.alpha + tot) * (p.beta2 + n * k) / ((p.gamma2 + n * k) * (n + 1.0)) * y
    if p.kind == "F3":
        return (p.alpha2 + n * k) * (p.beta2 + n * k) / ((p.gamma + tot) * (n + 1.0)) * y
    return (p.alpha + tot) * (p.beta + tot) / ((p.gamma2 + n * k) * (n + 1.0)) * y


def _edge_step(p: AppellParams, m: int, x: float) -> float:
    # T(m+1, 0) / T(m, 0); the same for all four kinds
    k = p.k
    return (p.alpha + m * k) * (p.beta + m * k) / ((p.gamma + m * k) * (m + 1.0)) * x


def _settle_index(p: AppellParams) -> int:
    # shells past this degree have no sign changes in any factor
    k = p.k
    values = [p.alpha, p.beta, p.gamma, p.alpha2, p.beta2, p.gamma2]
    return max([0] + [int(math.ceil(-v / k)) for v in values if v < 0])


def _shell_cap(cfg: EvalConfig) -> int:
    # total terms through shell N is (N+1)(N+2)/2
    return max(8, int(math.sqrt(2.0 * cfg.max_terms)))


def appell_series(p: AppellParams, pt: Point2, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Double series summed by total-degree shells.

    Stops after two consecutive shells whose absolute sums fall below
    ``rel_tol * max(1, |partial|)``, once the geometric bound on the remaining
    shells is below the same threshold.  The bound uses the larger of the
    last observed shell ratio and its limiting value.
    """
    k = p.k
    pt.check(p.kind, k)
    axis = reduce_to_hyp2f1(p, pt)
    if axis is not None:
        return hyp2f1_k_series(axis[0], axis[1], cfg)

    limit = pt.radius(p.kind, k)
    settle = _settle_index(p)
    cap = _shell_cap(cfg)
    shell = np.array([1.0])
    total, abs_total = 1.0, 1.0
    prev_abs, small_run, terms = 1.0, 0, 1
    ratio = math.inf
    for degree in range(1, cap + 1):
        m = np.arange(degree, dtype=float)
        inner = shell * _shell_step(p, m, degree - 1 - m, pt.y)
        edge = shell[-1] * _edge_step(p, degree - 1, pt.x)
        shell = np.append(inner, edge)
        terms += shell.size
        shell_sum = float(np.sum(shell))
        shell_abs = float(np.sum(np.abs(shell)))
        total += shell_sum
        abs_total += shell_abs
        if not math.isfinite(total):
            return EvalResult(total, math.inf, terms, False)
        scale = cfg.rel_tol * max(1.0, abs(total))
        small_run = small_run + 1 if shell_abs <= scale else 0
        if shell_abs == 0.0 and prev_abs == 0.0:
            return EvalResult(total, _rounding(abs_total, degree), terms, True)
        ratio = shell_abs / prev_abs if prev_abs > 0 else 0.0
        if small_run >= 2 and degree >= settle:
            rho = max(limit, ratio)
            if rho < 1.0:
                tail = shell_abs * rho / (1.0 - rho)
                if tail <= scale:
                    return EvalResult(total, tail + _rounding(abs_total, degree), terms, True)
        prev_abs = shell_abs
    # the budget ran out: bound the rest from the last shell ratio, which is
    # only meaningful once the shells are past their peak
    rho = max(limit, ratio)
    tail = shell_abs * rho / (1.0 - rho) if rho < 1.0 and degree >= settle else math.inf
    return EvalResult(total, tail + _rounding(abs_total, cap), terms, False)


def _rounding(abs_total: float, depth: int) -> float:
    return _EPS * math.sqrt(depth + 1.0) * abs_total


def _inner_params(p: AppellParams, m: int) -> Hyp2F1Params:
    k = p.k
    shift = m * k
    if p.kind == "F1":
        return Hyp2F1Params(p.alpha + shift, p.beta2, p.gamma + shift, k)
    if p.kind == "F2":
        return Hyp2F1Params(p.alpha + shift, p.beta2, p.gamma2, k)
    if p.kind == "F3":
        return Hyp2F1Params(p.alpha2, p.beta2, p.gamma + shift, k)
    return Hyp2F1Params(p.alpha + shift, p.beta + shift, p.gamma2, k)


def appell_single_sum(p: AppellParams, pt: Point2, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Outer sum over m of (alpha)_{m,k} (beta)_{m,k} / (gamma)_{m,k} x^m / m! times a 2F1,k in y.

    The inner parameters shift with m as in each function's single-sum form:
    F1 (alpha+mk, beta'; gamma+mk), F2 (alpha+mk, beta'; gamma'),
    F3 (alpha', beta'; gamma+mk), F4 (alpha+mk, beta+mk; gamma').
    """
    k = p.k
    pt.check(p.kind, k)
    coef = 1.0
    total, abs_total, err, terms = 0.0, 0.0, 0.0, 0
    history: list[float] = []
    small_run = 0
    settle = _settle_index(p)
    for m in range(cfg.max_terms):
        if m > 0:
            coef *= _edge_step(p, m - 1, pt.x)
        if coef == 0.0:
            return EvalResult(total, err + _rounding(abs_total, m), terms, True)
        inner = hyp2f1_k_series(_inner_params(p, m), pt.y, cfg)
        term = coef * inner.value
        total += term
        abs_total += abs(term)
        err += abs(coef) * inner.abs_err_estimate
        terms += inner.terms_used
        history.append(abs(term))
        if pt.x == 0.0:
            return EvalResult(total, err, terms, inner.converged)
        scale = cfg.rel_tol * max(1.0, abs(total))
        small_run = small_run + 1 if abs(term) <= scale else 0
        if small_run >= 2 and m >= settle and len(history) >= 3:
            ratios = [history[-1] / history[-2] if history[-2] > 0 else 0.0,
                      history[-2] / history[-3] if history[-3] > 0 else 0.0]
            rho = max(ratios)
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= scale:
                    return EvalResult(total, err + tail + _rounding(abs_total, m), terms, True)
    return EvalResult(total, math.inf, terms, False)


def _check_positive(**named) -> None:
    for name, value in named.items():
        if not value > 0:
            raise DomainError(f"integral representation needs {name} > 0, got {value!r}")


def f1_k_integral(p: AppellParams, pt: Point2, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Single integral for F1,k with weight t^(alpha/k-1) (1-t)^((gamma-alpha)/k-1).

    Needs gamma > alpha > 0, |kx| < 1 and |ky| < 1.
    """
    if p.kind != "F1":
        raise DomainError("f1_k_integral needs an F1 parameter set")
    k = p.k
    _check_positive(alpha=p.alpha, gamma_minus_alpha=p.gamma - p.alpha)
    pt.check("F1", k)
    norm = gamma_k(p.gamma, k) * rgamma_k(p.alpha, k) * rgamma_k(p.gamma - p.alpha, k) / k
    kx, ky = k * pt.x, k * pt.y
    ex, ey = -p.beta / k, -p.beta2 / k

    def integrand(t, omt):
        return (1.0 - kx * t) ** ex * (1.0 - ky * t) ** ey

    return integrate_beta(integrand, p.alpha / k, (p.gamma - p.alpha) / k, cfg).scaled(norm)


def f2_k_integral(p: AppellParams, pt: Point2, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Double integral for F2,k over the unit square.

    Needs gamma > beta > 0, gamma' > beta' > 0 and |kx| + |ky| < 1.
    """
    if p.kind != "F2":
        raise DomainError("f2_k_integral needs an F2 parameter set")
    k = p.k
    _check_positive(beta=p.beta, gamma_minus_beta=p.gamma - p.beta,
                    beta2=p.beta2, gamma2_minus_beta2=p.gamma2 - p.beta2)
    pt.check("F2", k)
    norm = 1.0 / (k * k * beta_k(p.beta, p.gamma - p.beta, k)
                  * beta_k(p.beta2, p.gamma2 - p.beta2, k))
    kx, ky, expo = k * pt.x, k * pt.y, -p.alpha / k

    def integrand(t, omt, s, oms):
        return (1.0 - kx * t - ky * s) ** expo

    res = integrate_beta2(integrand, p.beta / k, (p.gamma - p.beta) / k,
                          p.beta2 / k, (p.gamma2 - p.beta2) / k, cfg)
    return res.scaled(norm)


def f3_k_integral(p: AppellParams, pt: Point2, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Integral for F3,k over the simplex t, s >= 0, t + s <= 1.

    The weight is t^(beta/k-1) s^(beta'/k-1) (1-t-s)^((gamma-beta-beta')/k-1).
    With s = (1-t) u the simplex becomes the unit square and the weight
    factorises into t^(beta/k-1) (1-t)^((gamma-beta)/k-1) times
    u^(beta'/k-1) (1-u)^((gamma-beta-beta')/k-1).
    Needs beta > 0, beta' > 0, gamma - beta - beta' > 0, |kx| < 1, |ky| < 1.
    """
    if p.kind != "F3":
        raise DomainError("f3_k_integral needs an F3 parameter set")
    k = p.k
    rest = p.gamma - p.beta - p.beta2
    _check_positive(beta=p.beta, beta2=p.beta2, gamma_minus_betas=rest)
    pt.check("F3", k)
    norm = (gamma_k(p.gamma, k) * rgamma_k(p.beta, k) * rgamma_k(p.beta2, k)
            * rgamma_k(rest, k) / (k * k))
    kx, ky = k * pt.x, k * pt.y
    ex, ey = -p.alpha / k, -p.alpha2 / k

    def integrand(t, omt, u, omu):
        return (1.0 - kx * t) ** ex * (1.0 - ky * omt * u) ** ey

    res = integrate_beta2(integrand, p.beta / k, (p.gamma - p.beta) / k,
                          p.beta2 / k, rest / k, cfg)
    return res.scaled(norm)


def f1_k(alpha, beta, beta2, gamma, scale, x, y, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return appell_series(AppellParams("F1", alpha, beta, gamma, beta2=beta2, scale=scale),
                         Point2(x, y), cfg)


def f2_k(alpha, beta, beta2, gamma, gamma2, scale, x, y,
         cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return appell_series(AppellParams("F2", alpha, beta, gamma, beta2=beta2, gamma2=gamma2,
                                      scale=scale), Point2(x, y), cfg)


def f3_k(alpha, alpha2, beta, beta2, gamma, scale, x, y,
         cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return appell_series(AppellParams("F3", alpha, beta, gamma, alpha2=alpha2, beta2=beta2,
                                      scale=scale), Point2(x, y), cfg)


def f4_k(alpha, beta, gamma, gamma2, scale, x, y, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return appell_series(AppellParams("F4", alpha, beta, gamma, gamma2=gamma2, scale=scale),
                         Point2(x, y), cfg)
