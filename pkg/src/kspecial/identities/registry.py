"""Identity cases and single-sample verification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ..base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult
from .approx import Approx
from .backends import make_backend
from .sampling import Sampler

# a side is written once against the backend interface: side(B, params, point)
Side = Callable[..., object]


@dataclass(frozen=True)
class IdentityCase:
    """A two-sided identity with its sampling domain and tolerance.

    ``group`` is one of core, hyp, appell, kfrac, generating.  ``tag`` is a
    one-line statement of the identity.  ``slices`` lists point coordinates
    whose zero value collapses both sides onto the same evaluator.

    Cases with ``backend_forms`` set are written purely in backend calls, so
    they can be re-evaluated by the brute-force and alternate backends.  Other
    cases may supply ``classical_forms``, independent evaluations of both
    sides at k = 1.  Either makes the case eligible for the k = 1 audit.
    ``corrected_rhs`` and ``k_power_note`` describe a reading of the right
    side that differs from the printed one.  ``note`` is a reading of the
    statement that reports carry alongside the verdict.
    """

    id: str
    group: str
    tag: str
    lhs_form: Side
    rhs_form: Side
    sampler: Sampler
    param_names: tuple[str, ...]
    point_names: tuple[str, ...] = ()
    rel_tol: float = 1e-9
    n_terms_outer: int = 0
    slices: tuple[str, ...] = ()
    backend_forms: bool = False
    classical_forms: tuple[Side, Side] | None = None
    corrected_rhs: Side | None = None
    k_power_note: str = ""
    integer_params: tuple[str, ...] = field(default=())
    note: str = ""

    @property
    def auditable(self) -> bool:
        return self.backend_forms or self.classical_forms is not None

    def lhs(self, params: dict, point: dict, cfg: EvalConfig = DEFAULT_CONFIG,
            route: str = "primary") -> EvalResult:
        return _evaluate(self.lhs_form, params, point, cfg, route)

    def rhs(self, params: dict, point: dict, cfg: EvalConfig = DEFAULT_CONFIG,
            route: str = "primary") -> EvalResult:
        return _evaluate(self.rhs_form, params, point, cfg, route)

    def rhs_corrected(self, params: dict, point: dict, cfg: EvalConfig = DEFAULT_CONFIG,
                      route: str = "primary") -> EvalResult:
        if self.corrected_rhs is None:
            raise ValueError(f"{self.id} has no corrected reading")
        return _evaluate(self.corrected_rhs, params, point, cfg, route)

    def check_inputs(self, params: dict, point: dict) -> None:
        """Reject unknown names and report missing ones before any computation."""
        unknown = sorted(set(params) - set(self.param_names)) + sorted(set(point) - set(self.point_names))
        if unknown:
            raise ValueError(f"{self.id}: unknown parameter(s) {', '.join(unknown)}; "
                             f"expected {', '.join(self.param_names + self.point_names)}")
        missing = [n for n in self.param_names if n not in params]
        if missing:
            raise ValueError(f"{self.id}: missing parameter(s) {', '.join(missing)}")
        for n in self.integer_params:
            if float(params[n]) != int(params[n]) or params[n] < 0:
                raise DomainError(f"{self.id}: {n} must be a nonnegative integer, got {params[n]!r}")


def _evaluate(form: Side, params: dict, point: dict, cfg: EvalConfig, route: str) -> EvalResult:
    backend = make_backend(route, cfg)
    pt = {n: 0.0 for n in ("x", "y", "t", "z")}
    pt.update(point)
    return Approx.of(form(backend, params, pt)).result()


@dataclass(frozen=True)
class SampleRecord:
    """Outcome of one identity check.

    ``error`` carries the message of a domain error raised by either side; such
    a sample is not a numerical failure and has NaN values.
    """

    params: dict
    point: dict
    lhs: float
    rhs: float
    lhs_err: float
    rhs_err: float
    abs_diff: float
    rel_err: float
    passed: bool
    converged: bool
    error: str | None = None


def rel_err(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def compare(lhs: EvalResult, rhs: EvalResult, rel_tol: float) -> tuple[float, bool]:
    """rel_err and the pass decision: rel_err <= rel_tol + combined estimates / denominator."""
    denom = max(1.0, abs(lhs.value), abs(rhs.value))
    err = abs(lhs.value - rhs.value) / denom
    budget = lhs.abs_err_estimate + rhs.abs_err_estimate
    ok = math.isfinite(err) and math.isfinite(budget) and err <= rel_tol + budget / denom
    return err, ok


def verify_identity(case: IdentityCase, params: dict, point: dict,
                    cfg: EvalConfig = DEFAULT_CONFIG, rhs_reading: str = "printed") -> SampleRecord:
    """Evaluate both sides at one sample and compare.

    ``rhs_reading`` selects the printed right side or, where registered, the
    corrected one.  Domain errors from the evaluators are caught and recorded.
    """
    case.check_inputs(params, point)
    rhs_fn = case.rhs if rhs_reading == "printed" else case.rhs_corrected
    try:
        lhs = case.lhs(params, point, cfg)
        rhs = rhs_fn(params, point, cfg)
    except (DomainError, ZeroDivisionError, OverflowError) as exc:
        nan = math.nan
        return SampleRecord(dict(params), dict(point), nan, nan, nan, nan, nan, nan, False, False,
                            f"{type(exc).__name__}: {exc}")
    err, ok = compare(lhs, rhs, case.rel_tol)
    return SampleRecord(dict(params), dict(point), lhs.value, rhs.value, lhs.abs_err_estimate,
                        rhs.abs_err_estimate, abs(lhs.value - rhs.value), err, ok,
                        lhs.converged and rhs.converged)
