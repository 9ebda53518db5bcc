"""Linear and bilinear generating relations for 2F1,k, F1,k and F2,k.

Every side is a function ``side(B, p, x, y, t)`` of a backend ``B`` (see
:mod:`.backends`), the parameter mapping ``p`` and the point.  Parameter
names: lambda, rho, alpha, beta, gamma, delta and the scale k.

The printed forms of gf7, gf8 and gf9 do not hold for general k; the
``*_corrected`` right-hand sides are the readings that do, kept apart so that
the printed statements are what the sweeps test.
"""

from __future__ import annotations

from ..base import DEFAULT_CONFIG, EvalConfig, EvalResult
from .approx import Approx
from .backends import OUTER_CAP, SeriesBackend


def _weight(n, k, num, den, z):
    """prod (a)_{n,k} / prod (b)_{n,k} * z^n / n!, one factor at a time.

    Interleaving keeps the running product near its final size where separate
    k-symbols of order n = 200 would overflow.
    """
    w = 1.0
    for j in range(n):
        f = z / (j + 1)
        for a in num:
            f *= a + j * k
        for b in den:
            f /= b + j * k
        w *= f
    return w


def gf1_lhs(B, p, x, y, t):
    k, lam, al, be = p["k"], p["lambda"], p["alpha"], p["beta"]
    return B.outer_sum(lambda n: B.hyp(lam + n * k, al, be, k, x) * _weight(n, k, (lam,), (), t))


def gf1_rhs(B, p, x, y, t):
    k, lam, al, be = p["k"], p["lambda"], p["alpha"], p["beta"]
    return B.hyp(lam, al, be, k, x / (1 - k * t)) * (1 - k * t) ** (-lam / k)


def gf2_lhs(B, p, x, y, t):
    k, lam, rho, al, be = p["k"], p["lambda"], p["rho"], p["alpha"], p["beta"]
    return B.outer_sum(lambda n: B.hyp(rho - n * k, al, be, k, x) * _weight(n, k, (lam,), (), t))


def gf2_rhs(B, p, x, y, t):
    k, lam, rho, al, be = p["k"], p["lambda"], p["rho"], p["alpha"], p["beta"]
    f1 = B.appell("F1", k, x, -k * x * t / (1 - k * t), alpha=al, beta=rho, beta2=lam, gamma=be)
    return f1 * (1 - k * t) ** (-lam / k)


def gf3_lhs(B, p, x, y, t):
    k, rho, al, be = p["k"], p["rho"], p["alpha"], p["beta"]
    return B.outer_sum(lambda n: B.hyp(rho - n * k, al, be, k, x)
                       * _weight(n, k, (be - rho,), (), t))


def gf3_rhs(B, p, x, y, t):
    k, rho, al, be = p["k"], p["rho"], p["alpha"], p["beta"]
    w = 1 - k * t + k * k * x * t
    pref = (1 - k * t) ** ((al + rho - be) / k) * w ** (-al / k)
    return B.hyp(al, rho, be, k, x / w) * pref


def gf4_lhs(B, p, x, y, t):
    k, al, be, ga, de = p["k"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    return B.outer_sum(lambda n: B.hyp(-n * k, al, be, k, x)
                       * _weight(n, k, (be, ga), (de,), t))


def gf4_rhs(B, p, x, y, t):
    k, al, be, ga, de = p["k"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    return B.appell("F1", k, t, (1 - k * x) * t, alpha=ga, beta=be - al, beta2=al, gamma=de)


def gf5_lhs(B, p, x, y, t):
    k, lam, al, be, ga, de = p["k"], p["lambda"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    return B.outer_sum(lambda n: B.hyp(lam + n * k, al, be, k, x) * B.hyp(-n * k, ga, de, k, y)
                       * _weight(n, k, (lam,), (), t))


def gf5_rhs(B, p, x, y, t):
    k, lam, al, be, ga, de = p["k"], p["lambda"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    f2 = B.appell("F2", k, x / (1 - k * t), -k * y * t / (1 - k * t),
                  alpha=lam, beta=al, beta2=ga, gamma=be, gamma2=de)
    return f2 * (1 - k * t) ** (-lam / k)


def gf6_lhs(B, p, x, y, t):
    k, rho, al, be, ga, de = p["k"], p["rho"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    return B.outer_sum(lambda n: B.hyp(rho - n * k, al, be, k, x) * B.hyp(-n * k, ga, de, k, y)
                       * _weight(n, k, (be - rho,), (), t))


def gf6_rhs(B, p, x, y, t):
    k, rho, al, be, ga, de = p["k"], p["rho"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    f2 = B.appell("F2", k, -x / ((1 - k * x) * (1 - k * t)), -k * y * t / (1 - k * t),
                  alpha=be - rho, beta=al, beta2=ga, gamma=be, gamma2=de)
    return f2 * ((1 - k * x) ** (-al / k) * (1 - k * t) ** ((rho - be) / k))


def bilinear_lhs(B, p, x, y, t):
    """Left side shared by gf7 and gf8."""
    k, lam, al, be, ga, de = p["k"], p["lambda"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    return B.outer_sum(lambda n: B.hyp(lam + n * k, al, be, k, x) * B.hyp(lam + n * k, ga, de, k, y)
                       * _weight(n, k, (lam,), (), t))


gf7_lhs = bilinear_lhs
gf8_lhs = bilinear_lhs


def _gf7_rhs(B, p, x, y, t, corrected: bool):
    k, lam, al, be, ga, de = p["k"], p["lambda"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    u = 1 - k * t
    ratio = -k * x * y / u
    y_arg = y / u if corrected else -k * y / u
    num = (lam, al, ga) if corrected else (lam, al)
    den = (be, de) if corrected else (be,)

    def term(n):
        f2 = B.appell("F2", k, x / u, y_arg, alpha=lam + n * k, beta=al + n * k,
                      beta2=ga + n * k, gamma=be + n * k, gamma2=de + n * k)
        return f2 * _weight(n, k, num, den, ratio)

    return B.outer_sum(term) * u ** (-lam / k)


def gf7_rhs(B, p, x, y, t):
    return _gf7_rhs(B, p, x, y, t, corrected=False)


def gf7_rhs_corrected(B, p, x, y, t):
    """(gamma)_n/(delta)_n restored in the weight and y/(1-kt) as the second F2 argument."""
    return _gf7_rhs(B, p, x, y, t, corrected=True)


def _gf8_rhs(B, p, x, y, t, power: int):
    k, lam, al, be, ga, de = p["k"], p["lambda"], p["alpha"], p["beta"], p["gamma"], p["delta"]
    u = 1 - k * t
    ratio = k ** power * x * y * t / (u * u)

    def term(n):
        sh = n * k
        h1 = B.hyp(lam + sh, al + sh, be + sh, k, x / u)
        h2 = B.hyp(lam + sh, ga + sh, de + sh, k, y / u)
        return h1 * h2 * _weight(n, k, (lam, al, ga), (be, de), ratio)

    return B.outer_sum(term) * u ** (-lam / k)


def gf8_rhs(B, p, x, y, t):
    return _gf8_rhs(B, p, x, y, t, power=3)


def gf8_rhs_corrected(B, p, x, y, t):
    """k^2 x y t / (1-kt)^2 as the outer ratio."""
    return _gf8_rhs(B, p, x, y, t, power=2)


def gf9_lhs(B, p, x, y, t):
    k, lam, al, ga = p["k"], p["lambda"], p["alpha"], p["gamma"]
    return B.outer_sum(lambda n: B.hyp(lam + n * k, al, lam, k, x) * B.hyp(lam + n * k, ga, lam, k, y)
                       * _weight(n, k, (lam,), (), t))


def _gf9_rhs(B, p, x, y, t, power: int):
    k, lam, al, ga = p["k"], p["lambda"], p["alpha"], p["gamma"]
    a, b = 1 - k * t - k * x, 1 - k * t - k * y
    pref = (1 - k * t) ** ((ga + al - lam) / k) * a ** (-al / k) * b ** (-ga / k)
    return B.hyp(al, ga, lam, k, k ** power * x * y * t / (a * b)) * pref


def gf9_rhs(B, p, x, y, t):
    return _gf9_rhs(B, p, x, y, t, power=3)


def gf9_rhs_corrected(B, p, x, y, t):
    """k^2 x y t / ((1-kt-kx)(1-kt-ky)) as the 2F1,k argument."""
    return _gf9_rhs(B, p, x, y, t, power=2)


LHS = {"gf1": gf1_lhs, "gf2": gf2_lhs, "gf3": gf3_lhs, "gf4": gf4_lhs, "gf5": gf5_lhs,
       "gf6": gf6_lhs, "gf7": gf7_lhs, "gf8": gf8_lhs, "gf9": gf9_lhs}
RHS = {"gf1": gf1_rhs, "gf2": gf2_rhs, "gf3": gf3_rhs, "gf4": gf4_rhs, "gf5": gf5_rhs,
       "gf6": gf6_rhs, "gf7": gf7_rhs, "gf8": gf8_rhs, "gf9": gf9_rhs}
CORRECTED_RHS = {"gf7": gf7_rhs_corrected, "gf8": gf8_rhs_corrected, "gf9": gf9_rhs_corrected}


def generating_lhs(relation: str, params: dict, x: float = 0.0, y: float = 0.0, t: float = 0.0,
                   n_terms: int = 40, cfg: EvalConfig = DEFAULT_CONFIG,
                   adaptive: bool = True) -> EvalResult:
    """Truncated left side of a generating relation.

    Sums n = 0 .. n_terms-1; with ``adaptive`` the truncation is doubled up to
    200 terms while the geometric tail bound exceeds its target.  The error
    estimate is the tail bound plus the inner evaluators' estimates, and
    ``converged`` is false when the bound is still above target at the cap.
    """
    if relation not in LHS:
        raise KeyError(f"unknown generating relation {relation!r}")
    backend = SeriesBackend(cfg, outer_start=n_terms, outer_cap=max(n_terms, OUTER_CAP),
                            adaptive=adaptive)
    return Approx.of(LHS[relation](backend, params, x, y, t)).result()
