"""Values carrying a first-order error bound through arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..base import EvalResult


@dataclass(frozen=True)
class Approx:
    """A value with an absolute error bound, propagated to first order."""

    value: float
    err: float = 0.0
    converged: bool = True
    terms: int = 0

    @classmethod
    def of(cls, res) -> "Approx":
        if isinstance(res, Approx):
            return res
        if isinstance(res, EvalResult):
            return cls(float(res.value), float(res.abs_err_estimate), bool(res.converged),
                       int(res.terms_used))
        return cls(float(res))

    def result(self) -> EvalResult:
        return EvalResult(self.value, self.err, self.terms, self.converged)

    def _join(self, other: "Approx", value: float, err: float) -> "Approx":
        return Approx(value, err, self.converged and other.converged, self.terms + other.terms)

    def __add__(self, other):
        o = Approx.of(other)
        return self._join(o, self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __sub__(self, other):
        o = Approx.of(other)
        return self._join(o, self.value - o.value, self.err + o.err)

    def __rsub__(self, other):
        return Approx.of(other) - self

    def __neg__(self):
        return Approx(-self.value, self.err, self.converged, self.terms)

    def __mul__(self, other):
        o = Approx.of(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return self._join(o, self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Approx.of(other)
        if o.err >= abs(o.value):
            return self._join(o, self.value / o.value, math.inf)
        value = self.value / o.value
        err = (self.err + abs(value) * o.err) / (abs(o.value) - o.err)
        return self._join(o, value, err)

    def __rtruediv__(self, other):
        return Approx.of(other) / self
