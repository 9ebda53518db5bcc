"""Shared value types: the deformation scale, evaluation budgets and results."""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An argument lies outside the region where a function is defined."""


@dataclass(frozen=True)
class Scale:
    """The positive deformation parameter ``k``."""

    k: float

    def __post_init__(self):
        if not (isinstance(self.k, (int, float)) and math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"scale k must be a finite positive real, got {self.k!r}")


def as_k(scale) -> float:
    """Accept either a :class:`Scale` or a bare number and return ``k``."""
    if isinstance(scale, Scale):
        return float(scale.k)
    return float(Scale(float(scale)).k)


@dataclass(frozen=True)
class EvalConfig:
    """Tolerance and budget shared by every evaluator.

    ``quad_points`` is the node count of the coarsest quadrature level and
    ``quad_levels`` caps how many times the step is halved.
    """

    rel_tol: float = 1e-13
    max_terms: int = 10000
    quad_points: int = 24
    quad_levels: int = 8

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.max_terms < 1 or self.quad_points < 1 or self.quad_levels < 1:
            raise ValueError("budgets must be positive integers")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_err_estimate: float
    terms_used: int
    converged: bool

    def __float__(self):
        return float(self.value)

    def scaled(self, factor: float) -> "EvalResult":
        """Multiply value and error estimate by a (non-random) prefactor."""
        return EvalResult(self.value * factor, self.abs_err_estimate * abs(factor),
                          self.terms_used, self.converged)


def exact(value: float) -> EvalResult:
    return EvalResult(float(value), 0.0, 0, True)


def combine(value: float, *parts: EvalResult, extra_err: float = 0.0) -> EvalResult:
    """Result whose error is the sum of its parts' errors plus ``extra_err``."""
    err = extra_err + sum(p.abs_err_estimate for p in parts)
    return EvalResult(float(value), err, sum(p.terms_used for p in parts),
                      all(p.converged for p in parts))
