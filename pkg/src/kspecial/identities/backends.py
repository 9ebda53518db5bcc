"""Interchangeable evaluators for identity sides.

Each identity side is written once against this small interface:

    hyp(a, b, c, k, x)                      2F1,k
    appell(kind, k, x, y, **params)         F1,k .. F4,k
    poch(a, n, k)                           (a)_{n,k}
    outer_sum(term)                         sum over n of term(n), with a tail bound

``primary`` uses the library's main evaluators, ``alternate`` swaps in the
Pfaff-mapped or directly built 2F1,k and the single-sum Appell forms, and
``bruteforce`` sums the defining series from precomputed Pochhammer tables
to a fixed depth with no stopping rule at all.
"""

from __future__ import annotations

import math
from typing import Callable

from ..appell import AppellParams, Point2, appell_series, appell_single_sum
from ..base import DEFAULT_CONFIG, EvalConfig
from ..core import pochhammer_k
from ..hyp import Hyp2F1Params, hyp2f1_k_alternate, hyp2f1_k_series
from .approx import Approx

ROUTES = ("primary", "alternate", "bruteforce")

# outer truncation for generating relations: start, cap
OUTER_START = 40
OUTER_CAP = 200
# target for the outer tail relative to max(1, |sum|)
_OUTER_TARGET = 1e-12


class SeriesBackend:
    route = "primary"

    def __init__(self, cfg: EvalConfig = DEFAULT_CONFIG, outer_start: int = OUTER_START,
                 outer_cap: int = OUTER_CAP, adaptive: bool = True):
        self.cfg = cfg
        self.outer_start = outer_start
        self.outer_cap = max(outer_cap, outer_start)
        self.adaptive = adaptive

    def hyp(self, a, b, c, k, x) -> Approx:
        return Approx.of(hyp2f1_k_series(Hyp2F1Params(a, b, c, k), x, self.cfg))

    def appell(self, kind, k, x, y, **params) -> Approx:
        return Approx.of(appell_series(AppellParams(kind, scale=k, **params), Point2(x, y), self.cfg))

    def poch(self, a, n, k) -> float:
        return pochhammer_k(a, n, k)

    def outer_sum(self, term: Callable[[int], Approx]) -> Approx:
        """Sum term(0) + term(1) + ... with a geometric tail bound.

        Starts with ``outer_start`` terms and, when the bound is above target,
        keeps adding terms up to ``outer_cap``.  The bound inflates the largest
        of the last three term ratios by 10% to cover ratios still creeping up
        towards their limit.
        """
        total = Approx(0.0)
        mags: list[float] = []
        n = 0
        limit = self.outer_start
        while True:
            while n < limit:
                t = term(n)
                total = total + t
                mags.append(abs(t.value))
                n += 1
            tail = _geometric_tail(mags)
            if tail <= _OUTER_TARGET * max(1.0, abs(total.value)) or not self.adaptive:
                break
            if limit >= self.outer_cap:
                break
            limit = min(2 * limit, self.outer_cap)
        converged = total.converged and tail <= _OUTER_TARGET * max(1.0, abs(total.value))
        return Approx(total.value, total.err + tail, converged, total.terms)


def _geometric_tail(mags: list[float]) -> float:
    if mags[-1] == 0.0 and (len(mags) < 2 or mags[-2] == 0.0):
        return 0.0
    ratios = []
    for i in range(max(1, len(mags) - 3), len(mags)):
        if mags[i - 1] > 0.0:
            ratios.append(mags[i] / mags[i - 1])
        elif mags[i] > 0.0:
            return math.inf
    rho = 1.1 * max(ratios) if ratios else 0.0
    if rho >= 1.0:
        return math.inf
    return mags[-1] * rho / (1.0 - rho)


class AlternateBackend(SeriesBackend):
    route = "alternate"

    def hyp(self, a, b, c, k, x) -> Approx:
        return Approx.of(hyp2f1_k_alternate(Hyp2F1Params(a, b, c, k), x, self.cfg))

    def appell(self, kind, k, x, y, **params) -> Approx:
        return Approx.of(appell_single_sum(AppellParams(kind, scale=k, **params), Point2(x, y),
                                           self.cfg))


class BruteForceBackend:
    """Fixed-depth sums of the defining series, no recurrences in the term ratio.

    Every term is a product of entries from Pochhammer tables built up to the
    truncation depth.  Only the last shell's size is reported as error.
    """

    route = "bruteforce"

    def __init__(self, hyp_terms: int = 200, appell_shells: int = 80, outer_terms: int = 80):
        self.hyp_terms = hyp_terms
        self.appell_shells = appell_shells
        self.outer_terms = outer_terms
        self.cfg = DEFAULT_CONFIG

    @staticmethod
    def _table(a: float, n: int, k: float) -> list[tuple[float, float]]:
        # (sign, log|.|) of (a)_{m,k} for m = 0..n; logs keep deep tables finite
        out = [(1.0, 0.0)]
        for i in range(n):
            sign, log = out[-1]
            f = a + i * k
            out.append((0.0, 0.0) if f == 0.0 or sign == 0.0
                       else (sign * math.copysign(1.0, f), log + math.log(abs(f))))
        return out

    @staticmethod
    def _powers(x: float, n: int) -> list[tuple[float, float]]:
        # (sign, log|.|) of x^m / m!
        if x == 0.0:
            return [(1.0, 0.0)] + [(0.0, 0.0)] * n
        sx, lx = math.copysign(1.0, x), math.log(abs(x))
        return [(sx ** m, m * lx - math.lgamma(m + 1)) for m in range(n + 1)]

    @staticmethod
    def _term(num, den) -> float:
        if any(s == 0.0 for s, _ in num):
            return 0.0
        sign, log = 1.0, 0.0
        for s, l in num:
            sign *= s
            log += l
        for s, l in den:
            if s == 0.0:
                raise ZeroDivisionError("denominator Pochhammer symbol vanishes")
            sign *= s
            log -= l
        return 0.0 if sign == 0.0 else sign * math.exp(log)

    def poch(self, a, n, k) -> float:
        s, l = self._table(a, n, k)[n]
        return 0.0 if s == 0.0 else s * math.exp(l)

    def hyp(self, a, b, c, k, x) -> Approx:
        n = self.hyp_terms
        pa, pb, pc, px = (self._table(a, n, k), self._table(b, n, k), self._table(c, n, k),
                          self._powers(x, n))
        terms = [self._term((pa[m], pb[m], px[m]), (pc[m],)) for m in range(n + 1)]
        return Approx(math.fsum(terms), abs(terms[-1]) + abs(terms[-2]), True, n + 1)

    def appell(self, kind, k, x, y, alpha=0.0, beta=0.0, gamma=1.0, alpha2=0.0, beta2=0.0,
               gamma2=1.0) -> Approx:
        depth = self.appell_shells
        t = {name: self._table(v, depth, k) for name, v in
             (("a", alpha), ("b", beta), ("c", gamma), ("a2", alpha2), ("b2", beta2),
              ("c2", gamma2))}
        px, py = self._powers(x, depth), self._powers(y, depth)
        terms, last = [], 0.0
        for m in range(depth + 1):
            for n in range(depth + 1 - m):
                if kind == "F1":
                    num, den = (t["a"][m + n], t["b"][m], t["b2"][n]), (t["c"][m + n],)
                elif kind == "F2":
                    num, den = (t["a"][m + n], t["b"][m], t["b2"][n]), (t["c"][m], t["c2"][n])
                elif kind == "F3":
                    num, den = (t["a"][m], t["a2"][n], t["b"][m], t["b2"][n]), (t["c"][m + n],)
                else:
                    num, den = (t["a"][m + n], t["b"][m + n]), (t["c"][m], t["c2"][n])
                term = self._term(num + (px[m], py[n]), den)
                terms.append(term)
                if m + n == depth:
                    last += abs(term)
        return Approx(math.fsum(terms), last, True, len(terms))

    def outer_sum(self, term: Callable[[int], Approx]) -> Approx:
        total = Approx(0.0)
        last = 0.0
        for n in range(self.outer_terms):
            t = term(n)
            total = total + t
            last = abs(t.value)
        return Approx(total.value, total.err + last, True, total.terms)


def make_backend(route: str, cfg: EvalConfig = DEFAULT_CONFIG):
    if route == "primary":
        return SeriesBackend(cfg)
    if route == "alternate":
        return AlternateBackend(cfg)
    if route == "bruteforce":
        return BruteForceBackend()
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
