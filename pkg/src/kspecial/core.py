"""Pochhammer k-symbol, k-gamma, k-beta and the k-binomial series.

Everything reduces to the classical gamma function through

    Gamma_k(x) = k**(x/k - 1) * Gamma(x/k),
    B_k(x, y)  = B(x/k, y/k) / k,

so a single gamma kernel anchors the library.
"""

from __future__ import annotations

import math

from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, as_k
from .quadrature import integrate_beta, integrate_gamma_weight
from .series import hypergeometric_sum, terminating_index

__all__ = [
    "pochhammer", "pochhammer_k", "classical_gamma", "rgamma", "gamma_k", "rgamma_k",
    "gamma_k_quadrature", "beta_k", "beta_k_quadrature", "k_binomial",
    "k_binomial_series", "is_pole",
]

# Godfrey's Lanczos coefficients, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_OVERFLOW_GUARD = 1e290


def pochhammer_k(x: float, n: int, scale) -> float:
    """Rising k-factorial x (x+k) (x+2k) ... (x+(n-1)k).

    Evaluated as a direct product so that negative ``x`` gives exact zeros
    for terminating series.  If the running product threatens to overflow the
    remaining factors are accumulated as logarithms with the sign tracked
    separately; the result may then be ``inf``.
    """
    k = as_k(scale)
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    prod = 1.0
    for i in range(int(n)):
        factor = x + i * k
        if factor == 0.0:
            return 0.0
        if abs(prod) > _OVERFLOW_GUARD:
            return _pochhammer_log_tail(prod, x, i, int(n), k)
        prod *= factor
    return prod


def _pochhammer_log_tail(prod: float, x: float, start: int, n: int, k: float) -> float:
    sign = math.copysign(1.0, prod)
    log_mag = math.log(abs(prod))
    for i in range(start, n):
        factor = x + i * k
        if factor == 0.0:
            return 0.0
        sign *= math.copysign(1.0, factor)
        log_mag += math.log(abs(factor))
    if log_mag > 709.78:
        return sign * math.inf
    return sign * math.exp(log_mag)


def pochhammer(x: float, n: int) -> float:
    """Classical rising factorial (x)_n, i.e. the k = 1 symbol."""
    return pochhammer_k(x, n, 1.0)


def is_pole(x: float) -> bool:
    """True when ``x`` is zero or a negative integer."""
    return x <= 0.0 and x == math.floor(x)


def _sinpi(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _lanczos(x: float) -> float:
    # valid for x >= 0.5
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) does not overflow before exp(-t) damps it
    half = t ** (0.5 * (z + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


def classical_gamma(x: float) -> float:
    """Euler's Gamma(x) on the real line.

    Positive integers up to 171 return the exact factorial; other arguments
    use the Lanczos sum above, with the reflection formula below 1/2.
    """
    x = float(x)
    if math.isnan(x):
        return math.nan
    if is_pole(x):
        raise DomainError(f"Gamma has a pole at {x!r}")
    if x > 171.7:
        return math.inf
    if x == math.floor(x) and x <= 171.0:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (_sinpi(x) * classical_gamma(1.0 - x))
    return _lanczos(x)


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if is_pole(x):
        return 0.0
    return 1.0 / classical_gamma(x)


def gamma_k(x: float, scale) -> float:
    """k-gamma function Gamma_k(x) = k**(x/k - 1) Gamma(x/k).

    Arguments with x <= 0 (not poles) are reached through the classical
    reflection formula; the defining integral only covers x > 0.
    """
    k = as_k(scale)
    s = x / k
    if is_pole(s):
        raise DomainError(f"Gamma_k has a pole at x={x!r} (k={k!r})")
    return k ** (s - 1.0) * classical_gamma(s)


def rgamma_k(x: float, scale) -> float:
    """1/Gamma_k(x), zero at the poles."""
    k = as_k(scale)
    s = x / k
    if is_pole(s):
        return 0.0
    return k ** (1.0 - s) * rgamma(s)


def gamma_k_quadrature(x: float, scale, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Gamma_k(x) from its integral int_0^inf t^(x-1) exp(-t^k/k) dt.

    With u = t^k/k the integral becomes int_0^inf (k u)^(x/k - 1) exp(-u) du,
    which has no slowly decaying tail for any k.
    """
    k = as_k(scale)
    if not x > 0:
        raise DomainError("the k-gamma integral needs x > 0")
    return integrate_gamma_weight(x / k, math.log(k), cfg)


def beta_k(x: float, y: float, scale) -> float:
    """k-beta function B_k(x, y) = B(x/k, y/k) / k for x, y > 0."""
    k = as_k(scale)
    if not (x > 0 and y > 0):
        raise DomainError("B_k needs x > 0 and y > 0")
    return classical_gamma(x / k) * classical_gamma(y / k) / classical_gamma((x + y) / k) / k


def beta_k_quadrature(x: float, y: float, scale, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """B_k(x, y) from (1/k) int_0^1 t^(x/k-1) (1-t)^(y/k-1) dt."""
    k = as_k(scale)
    if not (x > 0 and y > 0):
        raise DomainError("B_k needs x > 0 and y > 0")
    res = integrate_beta(lambda t, omt: 1.0 + 0.0 * t, x / k, y / k, cfg)
    return res.scaled(1.0 / k)


def k_binomial(x: float, alpha: float, scale) -> float:
    """(1 - kx)^(-alpha/k), the closed form of sum (alpha)_{n,k} x^n / n!."""
    k = as_k(scale)
    if not abs(k * x) < 1.0:
        raise DomainError(f"k-binomial needs |kx| < 1, got kx={k * x!r}")
    return (1.0 - k * x) ** (-alpha / k)


def k_binomial_series(x: float, alpha: float, scale, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Truncated sum of (alpha)_{n,k} x^n / n!."""
    k = as_k(scale)
    if not abs(k * x) < 1.0 and terminating_index([(alpha, k)]) is None:
        raise DomainError(f"k-binomial series needs |kx| < 1, got kx={k * x!r}")
    return hypergeometric_sum([(alpha, k)], [], x, cfg)
