"""Riemann-Liouville k-fractional derivative.

For order mu < 0 the operator is the convolution

    D^mu_{z,k} f(z) = 1/(k Gamma_k(-mu)) int_0^z f(t) (z - t)^(-mu/k - 1) dt,

and on powers it acts by

    D^mu_{z,k} z^(eta/k) = Gamma_k(eta + k) / Gamma_k(eta + k - mu) z^((eta - mu)/k).

For mu >= 0 only the power rule is used, extended through the gamma ratio.
Series are handled termwise, a term c z^p being the power rule at eta = p k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .appell import AppellParams, Point2, appell_series
from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, Scale, as_k
from .core import beta_k, gamma_k, rgamma_k
from .hyp import Hyp2F1Params, hyp2f1_k_series
from .quadrature import integrate_beta

__all__ = [
    "FracOrder", "PowerFunction", "PowerSeries", "kfrac_monomial", "kfrac_series",
    "kfrac_quadrature", "k_binomial_power_series", "krl4_closed", "krl4_termwise",
    "krl5_closed", "krl5_termwise",
]


@dataclass(frozen=True)
class FracOrder:
    mu: float
    scale: Scale | float = 1.0

    @property
    def k(self) -> float:
        return as_k(self.scale)


@dataclass(frozen=True)
class PowerFunction:
    """The function z -> coeff * z**exponent on z > 0."""

    coeff: float
    exponent: float

    def __post_init__(self):
        if not (math.isfinite(self.coeff) and math.isfinite(self.exponent)):
            raise DomainError("power function needs a finite coefficient and exponent")

    def __call__(self, z: float) -> float:
        return self.coeff * z ** self.exponent


@dataclass(frozen=True)
class PowerSeries:
    """z**offset_exponent * sum_n coeffs[n] z**n, truncated after the last coefficient."""

    coeffs: tuple[float, ...]
    offset_exponent: float = 0.0
    tail_bound: float = field(default=0.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("a power series needs at least one coefficient")
        if not all(math.isfinite(c) for c in self.coeffs):
            raise DomainError("power series coefficients must be finite")

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc * z ** self.offset_exponent

    def _aligned(self, other: "PowerSeries"):
        if other.offset_exponent != self.offset_exponent:
            raise ValueError("series with different offsets cannot be combined")
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (size - len(self.coeffs))
        b = other.coeffs + (0.0,) * (size - len(other.coeffs))
        return a, b

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._aligned(other)
        return PowerSeries(tuple(x + y for x, y in zip(a, b)), self.offset_exponent)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._aligned(other)
        return PowerSeries(tuple(x - y for x, y in zip(a, b)), self.offset_exponent)

    def __mul__(self, c: float) -> "PowerSeries":
        return PowerSeries(tuple(c * x for x in self.coeffs), self.offset_exponent)

    __rmul__ = __mul__

    def __neg__(self) -> "PowerSeries":
        return self * -1.0


def _power_rule_coeff(eta: float, mu: float, k: float) -> float:
    # the beta form overflows as -mu/k -> 0 while 1/Gamma_k(-mu) -> 0; the ratio below is its limit
    if mu < 0 and -mu / k > 1e-8:
        return beta_k(eta + k, -mu, k) * rgamma_k(-mu, k)
    # continuation in mu; vanishes when eta + k - mu sits on a pole
    return gamma_k(eta + k, k) * rgamma_k(eta + k - mu, k)


def kfrac_monomial(eta: float, order: FracOrder) -> PowerFunction:
    """Image of z**(eta/k) under the k-fractional derivative of order ``mu``.

    Needs eta + k > 0.  Negative orders use B_k(eta+k, -mu)/Gamma_k(-mu);
    other orders use the equivalent ratio Gamma_k(eta+k)/Gamma_k(eta+k-mu).
    """
    k = order.k
    if not eta + k > 0:
        raise DomainError(f"power rule needs eta + k > 0, got eta={eta!r}, k={k!r}")
    return PowerFunction(_power_rule_coeff(eta, order.mu, k), (eta - order.mu) / k)


def kfrac_series(f: PowerSeries, order: FracOrder) -> PowerSeries:
    """Apply the power rule to every term of ``f``.

    The term a_n z**(p0+n) is mapped with eta = (p0+n) k, so the output keeps
    the same indexing with offset p0 - mu/k.
    """
    k = order.k
    out = []
    for n, a in enumerate(f.coeffs):
        power = f.offset_exponent + n
        if a == 0.0:
            out.append(0.0)
            continue
        if not power > -1.0:
            raise DomainError(f"term {n} has exponent {power!r} <= -1; the power rule needs eta + k > 0")
        out.append(a * _power_rule_coeff(power * k, order.mu, k))
    return PowerSeries(tuple(out), f.offset_exponent - order.mu / k)


def kfrac_quadrature(f: Callable, z: float, order: FracOrder,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Fractional integral of order mu < 0 at ``z`` by quadrature.

    With t = z tau the kernel (z-t)^(q-1), q = -mu/k, becomes a beta weight
    at tau = 1, so the endpoint singularity is absorbed into the rule.
    ``f`` must accept numpy arrays.
    """
    k = order.k
    if not order.mu < 0:
        raise DomainError(f"the integral form needs mu < 0, got mu={order.mu!r}")
    if not z > 0:
        raise DomainError(f"the integral form needs z > 0, got z={z!r}")
    q = -order.mu / k

    def integrand(tau, omt):
        return f(z * tau)

    res = integrate_beta(integrand, 1.0, q, cfg)
    return res.scaled(z ** q * rgamma_k(-order.mu, k) / k)


def k_binomial_power_series(alpha: float, scale, z: float, offset: float = 0.0,
                            cfg: EvalConfig = DEFAULT_CONFIG) -> PowerSeries:
    """Truncated sum (alpha)_{n,k} z^n / n! times z**offset.

    Coefficients are added until two consecutive terms at ``z`` fall below
    ``rel_tol`` relative to the running sum and the geometric tail bound, at
    ratio |kz|, does too.  That bound is stored on the result.
    """
    k = as_k(scale)
    if not abs(k * z) < 1.0:
        raise DomainError(f"k-binomial expansion needs |kz| < 1, got kz={k * z!r}")
    coeffs = [1.0]
    total, small = 1.0, 0
    for n in range(cfg.max_terms):
        c = coeffs[-1] * (alpha + n * k) / (n + 1.0)
        coeffs.append(c)
        term = abs(c * z ** (n + 1))
        total += c * z ** (n + 1)
        if c == 0.0:
            return PowerSeries(tuple(coeffs), offset)
        small = small + 1 if term <= cfg.rel_tol * max(1.0, abs(total)) else 0
        rho = abs(k * z) * max(1.0, abs(alpha + (n + 1) * k) / ((n + 2.0) * k))
        if small >= 2 and rho < 1.0:
            tail = term * rho / (1.0 - rho)
            if tail <= cfg.rel_tol * max(1.0, abs(total)):
                return PowerSeries(tuple(coeffs), offset, tail_bound=tail)
    return PowerSeries(tuple(coeffs), offset, tail_bound=math.inf)


def _check_krl(eta: float, mu: float) -> None:
    if not mu > eta > 0:
        raise DomainError(f"the closed form needs mu > eta > 0, got mu={mu!r}, eta={eta!r}")


def krl4_closed(eta: float, mu: float, beta: float, scale, z: float,
                cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Order eta - mu derivative of z^(eta/k-1) (1-kz)^(-beta/k), closed form.

    Equals Gamma_k(eta)/Gamma_k(mu) z^(mu/k-1) 2F1,k(beta, eta; mu; z).
    """
    k = as_k(scale)
    _check_krl(eta, mu)
    if not z > 0:
        raise DomainError(f"needs z > 0, got z={z!r}")
    inner = hyp2f1_k_series(Hyp2F1Params(beta, eta, mu, k), z, cfg)
    return inner.scaled(gamma_k(eta, k) * rgamma_k(mu, k) * z ** (mu / k - 1.0))


def krl4_termwise(eta: float, mu: float, beta: float, scale, z: float,
                  cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """The same quantity by expanding the binomial and applying the power rule termwise."""
    k = as_k(scale)
    _check_krl(eta, mu)
    if not z > 0:
        raise DomainError(f"needs z > 0, got z={z!r}")
    f = k_binomial_power_series(beta, k, z, offset=eta / k - 1.0, cfg=cfg)
    g = kfrac_series(f, FracOrder(eta - mu, k))
    return _evaluate_image(g, f, z, eta, mu, k)


def _evaluate_image(g: PowerSeries, f: PowerSeries, z: float, eta: float, mu: float,
                    k: float) -> EvalResult:
    value = g(z)
    # the power-rule factors Gamma_k(eta+nk)/Gamma_k(mu+nk) decrease in n
    # once mu > eta, so the image tail is at most the scale of the input tail
    lead = gamma_k(eta, k) * rgamma_k(mu, k)
    tail = f.tail_bound * abs(lead) * z ** (mu / k - 1.0)
    rounding = 4e-16 * math.sqrt(len(g.coeffs)) * sum(abs(c) * z ** n for n, c in enumerate(g.coeffs))
    rounding *= z ** g.offset_exponent
    return EvalResult(value, tail + rounding, len(g.coeffs), math.isfinite(tail))


def krl5_closed(eta: float, mu: float, alpha: float, beta: float, a: float, b: float, scale,
                z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Order eta - mu derivative of z^(eta/k-1) (1-kaz)^(-alpha/k) (1-kbz)^(-beta/k).

    Equals Gamma_k(eta)/Gamma_k(mu) z^(mu/k-1) F1,k(eta, alpha, beta; mu; az, bz).
    """
    k = as_k(scale)
    _check_krl(eta, mu)
    if not z > 0:
        raise DomainError(f"needs z > 0, got z={z!r}")
    p = AppellParams("F1", eta, alpha, mu, beta2=beta, scale=k)
    inner = appell_series(p, Point2(a * z, b * z), cfg)
    return inner.scaled(gamma_k(eta, k) * rgamma_k(mu, k) * z ** (mu / k - 1.0))


def krl5_termwise(eta: float, mu: float, alpha: float, beta: float, a: float, b: float, scale,
                  z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Termwise route: Cauchy product of the two binomial expansions, then the power rule."""
    k = as_k(scale)
    _check_krl(eta, mu)
    if not z > 0:
        raise DomainError(f"needs z > 0, got z={z!r}")
    if not max(abs(k * a * z), abs(k * b * z)) < 1.0:
        raise DomainError("needs max(|kaz|, |kbz|) < 1")
    fa = k_binomial_power_series(alpha, k, a * z, cfg=cfg)
    fb = k_binomial_power_series(beta, k, b * z, cfg=cfg)
    # coefficients in z: (alpha)_{j,k} a^j / j! convolved with (beta)_{m,k} b^m / m!
    size = len(fa.coeffs) + len(fb.coeffs) - 1
    ca = [c * a ** j for j, c in enumerate(fa.coeffs)] + [0.0] * (size - len(fa.coeffs))
    cb = [c * b ** j for j, c in enumerate(fb.coeffs)] + [0.0] * (size - len(fb.coeffs))
    prod = [math.fsum(ca[j] * cb[n - j] for j in range(n + 1)) for n in range(size)]
    f = PowerSeries(tuple(prod), eta / k - 1.0,
                    tail_bound=_product_tail(fa, fb, a * z, b * z))
    g = kfrac_series(f, FracOrder(eta - mu, k))
    return _evaluate_image(g, f, z, eta, mu, k)


def _product_tail(fa: PowerSeries, fb: PowerSeries, za: float, zb: float) -> float:
    # |A B - A_N B_M| <= |A_N| tail_B + |B_M| tail_A + tail_A tail_B, with
    # the truncated sums bounded by their absolute values
    sa = sum(abs(c * za ** j) for j, c in enumerate(fa.coeffs))
    sb = sum(abs(c * zb ** j) for j, c in enumerate(fb.coeffs))
    return sa * fb.tail_bound + sb * fa.tail_bound + fa.tail_bound * fb.tail_bound

