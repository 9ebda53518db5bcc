"""Hypergeometric-type power series driven by their term ratio.

Every series in the library has the shape

    sum_n  prod_i (a_i)_{n, s_i} / prod_j (b_j)_{n, s_j} * x^n / n!

so one forward recurrence serves them all.  Parameters are passed as
``(value, step)`` pairs: a k-symbol (a)_{n,k} is ``(a, k)`` and an ordinary
Pochhammer symbol is ``(a, 1.0)``.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult

__all__ = ["hypergeometric_sum", "terminating_index", "unit_argument_sum"]

_EPS = float(np.finfo(float).eps)

Factor = tuple[float, float]


def _zero_index(value: float, step: float) -> int | None:
    # n0 >= 0 with value + n0*step == 0 exactly, else None
    if step == 0.0:
        return 0 if value == 0.0 else None
    q = -value / step
    if not q > -0.5 or not math.isfinite(q):
        return None
    # round first: -n*k/k need not be an exact integer even when -n*k + n*k == 0
    n0 = int(round(q))
    return n0 if value + n0 * step == 0.0 else None


def terminating_index(num: Sequence[Factor]) -> int | None:
    """Index of the last nonzero term when some numerator factor vanishes."""
    zeros = [z for z in (_zero_index(a, s) for a, s in num) if z is not None]
    return min(zeros) if zeros else None


def _check_poles(num: Sequence[Factor], den: Sequence[Factor]) -> int | None:
    stop = terminating_index(num)
    for b, s in den:
        m0 = _zero_index(b, s)
        if m0 is not None and (stop is None or m0 < stop):
            raise DomainError(f"denominator parameter {b!r} (step {s!r}) hits zero at n={m0}")
    return stop


def _ratio(num, den, n: int, x: float) -> float:
    # numerator product first so swapping two numerator parameters is exact
    top = 1.0
    for a, s in num:
        top *= a + n * s
    bottom = n + 1.0
    for b, s in den:
        bottom *= b + n * s
    return top * x / bottom


def _limit_ratio(num, den, x: float) -> float:
    # |t_{n+1}/t_n| as n -> infinity
    excess = len(num) - len(den) - 1
    if excess < 0:
        return 0.0
    if excess > 0:
        return math.inf
    lim = abs(x)
    for _, s in num:
        lim *= abs(s)
    for _, s in den:
        lim /= abs(s)
    return lim


def _last_sign_change(num, den) -> int:
    # beyond this index every factor a + n*s has a fixed sign
    n = 0
    for v, s in list(num) + list(den):
        if s != 0.0 and -v / s > n:
            n = int(math.ceil(-v / s))
    return n


def hypergeometric_sum(num: Sequence[Factor], den: Sequence[Factor], x: float,
                       cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Sum the series term by term with a geometric tail bound.

    Stops once two consecutive terms are below ``rel_tol * |sum|`` and the
    tail bound ``|t| rho / (1 - rho)`` is below ``rel_tol * max(1, |sum|)``,
    where ``rho`` bounds the remaining term ratios.  The returned error adds
    an estimate of accumulated rounding to that tail bound.
    """
    num = [(float(a), float(s)) for a, s in num]
    den = [(float(b), float(s)) for b, s in den]
    stop = _check_poles(num, den)
    x = float(x)
    if x == 0.0 or stop == 0:
        return EvalResult(1.0, 0.0, 1, True)
    limit = _limit_ratio(num, den, x)
    settle = _last_sign_change(num, den)
    n_max = cfg.max_terms if stop is None else min(stop, cfg.max_terms)

    term, total, abs_total = 1.0, 1.0, 1.0
    small_run = 0
    rho = math.inf
    for n in range(n_max):
        r = _ratio(num, den, n, x)
        term *= r
        total += term
        abs_total += abs(term)
        if not math.isfinite(total):
            return EvalResult(total, math.inf, n + 2, False)
        if stop is not None and n + 1 == stop:
            return EvalResult(total, _rounding(abs_total, n + 2), n + 2, True)
        scale = cfg.rel_tol * max(1.0, abs(total))
        small_run = small_run + 1 if abs(term) <= scale else 0
        if small_run >= 2 and n >= settle:
            rho = max(abs(_ratio(num, den, n + 1, x)), limit)
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= scale:
                    return EvalResult(total, tail + _rounding(abs_total, n + 2), n + 2, True)
    rho = max(abs(_ratio(num, den, n_max, x)), limit)
    tail = abs(term) * rho / (1.0 - rho) if rho < 1.0 else math.inf
    return EvalResult(total, tail + _rounding(abs_total, n_max + 1), n_max + 1, False)


def _rounding(abs_total: float, n_terms: int) -> float:
    return float(_EPS * math.sqrt(n_terms) * abs_total)


# Richardson extrapolation at unit argument: the number of doubling levels
# and the base multiplier for the first partial-sum index.
_LEVELS = 7
_BASE = 16
_MAX_UNIT_TERMS = 1 << 21
# decay exponents at least this large are summed directly
_DIRECT_EXPONENT = 6.0


def unit_argument_sum(a: float, b: float, c: float,
                      cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Classical Gauss series 2F1(a, b; c; 1) for c - a - b > 0.

    The terms behave like n^(-(c-a-b)-1), so partial sums converge only
    algebraically.  With S_N the partial sum through index N-1, the remainder
    has the expansion N^(-s) (A_0 + A_1/N + ...) with s = c - a - b known
    exactly, and the limit is extrapolated from S_N at N = N_0 2^j.
    Terminating series are summed exactly.
    """
    num, den = [(a, 1.0), (b, 1.0)], [(c, 1.0)]
    stop = _check_poles(num, den)
    if stop is not None:
        return hypergeometric_sum(num, den, 1.0, cfg)
    s = c - a - b
    if not s > 0:
        raise DomainError(f"unit-argument series diverges: c - a - b = {s!r} <= 0")
    n0 = int(_BASE * max(1.0, abs(a), abs(b), abs(c), 1.0 / s))
    n_top = n0 << _LEVELS
    if n_top > _MAX_UNIT_TERMS:
        return EvalResult(math.nan, math.inf, 0, False)

    n = np.arange(n_top, dtype=float)
    ratios = (a + n) * (b + n) / ((c + n) * (n + 1.0))
    terms = np.concatenate(([1.0], np.cumprod(ratios[:-1])))
    partial = np.cumsum(terms)
    abs_total = float(np.sum(np.abs(terms)))
    rounding = _EPS * math.sqrt(n_top) * abs_total

    if s >= _DIRECT_EXPONENT:
        # sum_{m >= N} m^(-s-1) <= N^(-s)/s once the terms are monotone
        value = float(partial[-1])
        tail = float(abs(terms[-1])) * n_top / s
        return EvalResult(value, tail + rounding, n_top,
                          tail <= cfg.rel_tol * max(1.0, abs(value)))

    index = [n0 << j for j in range(_LEVELS + 1)]
    sums = np.array([partial[m - 1] for m in index])
    estimates, amplification = [], 1.0
    for order in range(1, _LEVELS + 1):
        rows = range(_LEVELS - order, _LEVELS + 1)
        # columns scaled by their value at the smallest index used
        mat = np.array([[1.0] + [-(2.0 ** (-(j - rows[0]) * (s + i))) for i in range(order)]
                        for j in rows])
        sol = np.linalg.solve(mat, sums[list(rows)])
        estimates.append(float(sol[0]))
        weights = np.linalg.solve(mat.T, np.eye(order + 1)[0])
        amplification = float(np.sum(np.abs(weights)))
    value = estimates[-1]
    trunc = max(abs(estimates[-1] - estimates[-2]), abs(estimates[-1] - estimates[-3]) / 8.0)
    err = trunc + amplification * rounding
    return EvalResult(value, err, n_top, trunc <= cfg.rel_tol * max(1.0, abs(value)))
