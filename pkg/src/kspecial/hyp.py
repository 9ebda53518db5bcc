"""The k-hypergeometric function 2F1,k and its unit-argument relatives.

    2F1,k(alpha, beta; gamma; x) = sum_n (alpha)_{n,k} (beta)_{n,k} / (gamma)_{n,k} x^n / n!

converges for |k x| < 1.  The mixed-index series replaces (alpha)_{n,k} by the
ordinary symbol (alpha)_n and is summed at x = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, Scale, as_k
from .core import gamma_k, is_pole, pochhammer_k, rgamma_k
from .quadrature import integrate_beta
from .series import hypergeometric_sum, terminating_index, unit_argument_sum

__all__ = [
    "Hyp2F1Params", "hyp2f1_k", "hyp2f1_k_series", "hyp2f1_k_integral", "hyp2f1_k_mixed",
    "hyp2f1_k_alternate", "gauss_sum_k", "terminating_mixed", "euler_transform_rhs",
]


@dataclass(frozen=True)
class Hyp2F1Params:
    alpha: float
    beta: float
    gamma: float
    scale: Scale | float = 1.0

    def __post_init__(self):
        k = as_k(self.scale)
        if is_pole(self.gamma / k) and self.terminates_at() is None:
            raise DomainError(f"gamma/k must not be zero or a negative integer, got {self.gamma / k!r}")

    @property
    def k(self) -> float:
        return as_k(self.scale)

    def numerator(self):
        return [(float(self.alpha), self.k), (float(self.beta), self.k)]

    def denominator(self):
        return [(float(self.gamma), self.k)]

    def terminates_at(self) -> int | None:
        return terminating_index([(float(self.alpha), as_k(self.scale)),
                                  (float(self.beta), as_k(self.scale))])


def _check_radius(p: Hyp2F1Params, x: float, what: str = "2F1,k") -> None:
    if not abs(p.k * x) < 1.0 and p.terminates_at() is None:
        raise DomainError(f"{what} series needs |kx| < 1, got kx={p.k * x!r}")


def hyp2f1_k_series(p: Hyp2F1Params, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Power series of 2F1,k by forward term recurrence."""
    _check_radius(p, x)
    return hypergeometric_sum(p.numerator(), p.denominator(), x, cfg)


def hyp2f1_k(alpha: float, beta: float, gamma: float, scale, x: float,
             cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Convenience wrapper around :func:`hyp2f1_k_series`."""
    return hyp2f1_k_series(Hyp2F1Params(alpha, beta, gamma, scale), x, cfg)


def hyp2f1_k_integral(p: Hyp2F1Params, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Euler-type integral over [0, 1] with weight t^(beta/k-1) (1-t)^((gamma-beta)/k-1).

    Requires gamma > beta > 0 and |kx| < 1.
    """
    k = p.k
    if not (p.gamma > p.beta > 0):
        raise DomainError("the integral representation needs gamma > beta > 0")
    if not abs(k * x) < 1.0:
        raise DomainError(f"the integral representation needs |kx| < 1, got kx={k * x!r}")
    norm = gamma_k(p.gamma, k) * rgamma_k(p.beta, k) * rgamma_k(p.gamma - p.beta, k) / k
    expo = -p.alpha / k
    kx = k * x

    def integrand(t, omt):
        return (1.0 - kx * t) ** expo

    res = integrate_beta(integrand, p.beta / k, (p.gamma - p.beta) / k, cfg)
    return res.scaled(norm)


def hyp2f1_k_alternate(p: Hyp2F1Params, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Second evaluation route for cross-checks.

    Uses the Pfaff map x -> -x/(1-kx) when it shrinks the argument enough,
    otherwise sums terms built independently from Pochhammer products, not
    from the running ratio.
    """
    _check_radius(p, x)
    k = p.k
    big_x = k * x
    if p.terminates_at() is None and big_x < 1.0 and abs(big_x / (1.0 - big_x)) <= 0.75:
        inner = Hyp2F1Params(p.alpha, p.gamma - p.beta, p.gamma, k)
        res = hyp2f1_k_series(inner, -x / (1.0 - big_x), cfg)
        return res.scaled((1.0 - big_x) ** (-p.alpha / k))
    return _direct_terms(p, x, cfg)


def _direct_terms(p: Hyp2F1Params, x: float, cfg: EvalConfig) -> EvalResult:
    k = p.k
    stop = p.terminates_at()
    n_max = cfg.max_terms if stop is None else min(stop, cfg.max_terms)
    log_x = math.log(abs(x)) if x != 0.0 else -math.inf
    # each k-symbol kept as (sign, log magnitude) so deep terms neither overflow nor form inf/inf
    symbols = [[1.0, 0.0] for _ in range(3)]
    total, abs_total, small = 1.0, 1.0, 0
    for n in range(1, n_max + 1):
        for sym, a in zip(symbols, (p.alpha, p.beta, p.gamma)):
            f = a + (n - 1) * k
            sym[0] = sym[0] * math.copysign(1.0, f) if f != 0.0 else 0.0
            sym[1] += math.log(abs(f)) if f != 0.0 else 0.0
        if symbols[0][0] == 0.0 or symbols[1][0] == 0.0 or x == 0.0:
            term = 0.0
        else:
            sign = symbols[0][0] * symbols[1][0] * symbols[2][0] * (-1.0 if x < 0 and n % 2 else 1.0)
            term = sign * math.exp(symbols[0][1] + symbols[1][1] - symbols[2][1]
                                   + n * log_x - math.lgamma(n + 1.0))
        total += term
        abs_total += abs(term)
        small = small + 1 if abs(term) <= cfg.rel_tol * max(1.0, abs(total)) else 0
        if stop is None and small >= 3 and abs(k * x) < 1.0:
            rho = abs(k * x)
            tail = abs(term) * rho / (1.0 - rho)
            if tail <= cfg.rel_tol * max(1.0, abs(total)):
                return EvalResult(total, tail + 4e-16 * math.sqrt(n) * abs_total, n + 1, True)
    return EvalResult(total, 4e-16 * math.sqrt(n_max) * abs_total, n_max + 1, stop is not None)


def hyp2f1_k_mixed(alpha: float, beta: float, gamma: float, scale,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Mixed-index series sum_n (alpha)_n (beta)_{n,k} / ((gamma)_{n,k} n!) at unit argument.

    The k-symbols share the step k, so their ratio is (beta/k)_n / (gamma/k)_n
    and the sum is the classical Gauss series 2F1(alpha, beta/k; gamma/k; 1).
    Needs (gamma - beta - k alpha)/k > 0 unless the series terminates.
    """
    k = as_k(scale)
    if is_pole(gamma / k) and terminating_index([(alpha, 1.0), (beta / k, 1.0)]) is None:
        raise DomainError(f"gamma/k must not be zero or a negative integer, got {gamma / k!r}")
    return unit_argument_sum(float(alpha), beta / k, gamma / k, cfg)


def gauss_sum_k(alpha: float, beta: float, gamma: float, scale) -> float:
    """Closed form Gamma_k(g) Gamma_k(g-b-k a) / (Gamma_k(g-b) Gamma_k(g-k a))."""
    k = as_k(scale)
    margin = gamma - beta - k * alpha
    if not margin > 0:
        raise DomainError(f"the k-Gauss sum needs gamma - beta - k*alpha > 0, got {margin!r}")
    return (gamma_k(gamma, k) * gamma_k(margin, k)
            * rgamma_k(gamma - beta, k) * rgamma_k(gamma - k * alpha, k))


def terminating_mixed(n: int, beta: float, gamma: float, scale) -> float:
    """(gamma - beta)_{n,k} / (gamma)_{n,k}, the mixed series at alpha = -n."""
    k = as_k(scale)
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    den = pochhammer_k(gamma, int(n), k)
    if den == 0.0:
        raise DomainError(f"(gamma)_(n,k) vanishes for gamma={gamma!r}, n={n!r}, k={k!r}")
    return pochhammer_k(gamma - beta, int(n), k) / den


def euler_transform_rhs(p: Hyp2F1Params, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """(1 - kx)^(-beta/k) 2F1,k(gamma - alpha, beta; gamma; -x/(1 - kx))."""
    k = p.k
    if not abs(k * x) < 1.0:
        raise DomainError(f"Euler transformation needs |kx| < 1, got kx={k * x!r}")
    mapped = -x / (1.0 - k * x)
    inner = Hyp2F1Params(p.gamma - p.alpha, p.beta, p.gamma, k)
    res = hyp2f1_k_series(inner, mapped, cfg)
    return res.scaled((1.0 - k * x) ** (-p.beta / k))
