"""Command-line interface: eval, verify, sweep and list.

Parameters are given as ``name=value`` tokens.  Exit status: 0 pass or
converged, 1 numerical failure, 2 domain or usage error, 3 non-convergence,
4 suspected discrepancy in the printed identity.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable

from .appell import f1_k, f2_k, f3_k, f4_k
from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, exact
from .core import beta_k, gamma_k, pochhammer_k
from .hyp import hyp2f1_k, hyp2f1_k_mixed
from .identities import report
from .identities.cases import CASES
from .identities.registry import verify_identity
from .identities.sweep import DISCREPANCY, PASS, sweep
from .kfrac import FracOrder, kfrac_monomial, kfrac_quadrature

EXIT_PASS, EXIT_FAIL, EXIT_DOMAIN, EXIT_NONCONVERGED, EXIT_DISCREPANCY = 0, 1, 2, 3, 4
THREADS_ENV = "KSPECIAL_THREADS"

# Greek spellings accepted on the command line
ALIASES = {"α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta", "λ": "lambda", "ρ": "rho",
           "η": "eta", "μ": "mu", "α'": "alpha2", "β'": "beta2", "γ'": "gamma2"}


@dataclass(frozen=True)
class Function:
    params: tuple[str, ...]
    run: Callable[[dict, EvalConfig], EvalResult]
    summary: str
    defaults: tuple[tuple[str, float], ...] = ()
    integers: tuple[str, ...] = ()


def _monomial(a: dict, cfg: EvalConfig) -> EvalResult:
    return exact(kfrac_monomial(a["eta"], FracOrder(a["mu"], a["k"]))(a["z"]))


def _monomial_quadrature(a: dict, cfg: EvalConfig) -> EvalResult:
    power = a["eta"] / a["k"]
    return kfrac_quadrature(lambda t: t ** power, a["z"], FracOrder(a["mu"], a["k"]), cfg)


FUNCTIONS: dict[str, Function] = {
    "gamma_k": Function(("k", "x"), lambda a, c: exact(gamma_k(a["x"], a["k"])),
                        "k-gamma function Gamma_k(x)"),
    "beta_k": Function(("k", "x", "y"), lambda a, c: exact(beta_k(a["x"], a["y"], a["k"])),
                       "k-beta function B_k(x, y)"),
    "pochhammer_k": Function(("k", "x", "n"), lambda a, c: exact(pochhammer_k(a["x"], a["n"], a["k"])),
                             "Pochhammer k-symbol (x)_{n,k}", integers=("n",)),
    "hyp2f1_k": Function(("k", "alpha", "beta", "gamma", "x"),
                         lambda a, c: hyp2f1_k(a["alpha"], a["beta"], a["gamma"], a["k"], a["x"], c),
                         "k-hypergeometric function 2F1,k(alpha, beta; gamma; x)"),
    "hyp2f1_k_mixed": Function(("k", "alpha", "beta", "gamma"),
                               lambda a, c: hyp2f1_k_mixed(a["alpha"], a["beta"], a["gamma"], a["k"], c),
                               "sum (alpha)_n (beta)_{n,k} / ((gamma)_{n,k} n!) at unit argument"),
    "f1_k": Function(("k", "alpha", "beta", "beta2", "gamma", "x", "y"),
                     lambda a, c: f1_k(a["alpha"], a["beta"], a["beta2"], a["gamma"], a["k"],
                                       a["x"], a["y"], c),
                     "Appell F1,k(alpha, beta, beta2; gamma; x, y)"),
    "f2_k": Function(("k", "alpha", "beta", "beta2", "gamma", "gamma2", "x", "y"),
                     lambda a, c: f2_k(a["alpha"], a["beta"], a["beta2"], a["gamma"], a["gamma2"],
                                       a["k"], a["x"], a["y"], c),
                     "Appell F2,k(alpha; beta, beta2; gamma, gamma2; x, y)"),
    "f3_k": Function(("k", "alpha", "alpha2", "beta", "beta2", "gamma", "x", "y"),
                     lambda a, c: f3_k(a["alpha"], a["alpha2"], a["beta"], a["beta2"], a["gamma"],
                                       a["k"], a["x"], a["y"], c),
                     "Appell F3,k(alpha, alpha2, beta, beta2; gamma; x, y)"),
    "f4_k": Function(("k", "alpha", "beta", "gamma", "gamma2", "x", "y"),
                     lambda a, c: f4_k(a["alpha"], a["beta"], a["gamma"], a["gamma2"], a["k"],
                                       a["x"], a["y"], c),
                     "Appell F4,k(alpha, beta; gamma, gamma2; x, y)"),
    "kfrac_monomial": Function(("k", "eta", "mu", "z"), _monomial,
                               "k-fractional derivative of z^(eta/k) by the power rule, at z",
                               defaults=(("z", 1.0),)),
    "kfrac_quadrature": Function(("k", "eta", "mu", "z"), _monomial_quadrature,
                                 "k-fractional integral (mu < 0) of z^(eta/k) by quadrature, at z",
                                 defaults=(("z", 1.0),)),
}


class UsageError(Exception):
    """Malformed or unknown command-line input."""


def parse_assignments(tokens: list[str], allowed: tuple[str, ...]) -> dict[str, float]:
    """Parse ``name=value`` tokens, rejecting unknown or repeated names."""
    out: dict[str, float] = {}
    for tok in tokens:
        name, sep, raw = tok.partition("=")
        name = ALIASES.get(name.strip(), name.strip())
        if not sep or not name:
            raise UsageError(f"expected name=value, got {tok!r}")
        if name not in allowed:
            raise UsageError(f"unknown parameter {name!r}; expected one of {', '.join(allowed)}")
        if name in out:
            raise UsageError(f"parameter {name!r} given twice")
        try:
            out[name] = float(raw)
        except ValueError:
            raise UsageError(f"{name}: {raw!r} is not a number") from None
    return out


def _integer(name: str, v: float) -> int:
    if not (math.isfinite(v) and v == int(v)):
        raise DomainError(f"{name} must be an integer, got {v!r}")
    return int(v)


def _config(ns) -> EvalConfig:
    changes = {}
    if ns.max_terms is not None:
        changes["max_terms"] = ns.max_terms
    if ns.rel_tol is not None and ns.command == "eval":
        changes["rel_tol"] = ns.rel_tol
    try:
        return dataclasses.replace(DEFAULT_CONFIG, **changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _case(ns):
    if ns.target not in CASES:
        raise UsageError(f"unknown identity {ns.target!r}; see 'list identities'")
    case = CASES[ns.target]
    if ns.rel_tol is not None:
        case = dataclasses.replace(case, rel_tol=ns.rel_tol)
    return case


def run_eval(ns) -> tuple[str, int]:
    if ns.target not in FUNCTIONS:
        raise UsageError(f"unknown function {ns.target!r}; see 'list functions'")
    fn = FUNCTIONS[ns.target]
    args = dict(fn.defaults) | parse_assignments(ns.assignments, fn.params)
    missing = [n for n in fn.params if n not in args]
    if missing:
        raise UsageError(f"{ns.target}: missing parameter(s) {', '.join(missing)}")
    cfg = _config(ns)
    call = dict(args)
    for n in fn.integers:
        call[n] = _integer(n, args[n])
    res = fn.run(call, cfg)
    if ns.format == "json":
        text = report.dumps(report.eval_dict(ns.target, args, res))
    elif ns.format == "csv":
        text = report.eval_csv(ns.target, args, res)
    else:
        text = report.eval_text(ns.target, args, res)
    return text, EXIT_PASS if res.converged else EXIT_NONCONVERGED


def run_verify(ns) -> tuple[str, int]:
    case = _case(ns)
    given = parse_assignments(ns.assignments, case.param_names + case.point_names)
    params = {n: v for n, v in given.items() if n in case.param_names}
    point = {n: v for n, v in given.items() if n in case.point_names}
    case.check_inputs(params, point)
    for n in case.integer_params:
        params[n] = _integer(n, params[n])
    if ns.reading == "corrected" and case.corrected_rhs is None:
        raise UsageError(f"{case.id} has no corrected reading")
    rec = verify_identity(case, params, point, _config(ns), ns.reading)
    if ns.format == "json":
        text = report.dumps(report.record_dict(case.id, rec, case.rel_tol))
    elif ns.format == "csv":
        text = report.records_csv(case.id, [rec])
    else:
        text = report.record_text(case.id, rec, case.rel_tol)
    if rec.error is not None:
        return text, EXIT_DOMAIN
    if rec.passed:
        return text, EXIT_PASS
    return text, EXIT_FAIL if rec.converged else EXIT_NONCONVERGED


def _threads(ns) -> int:
    if ns.threads is not None:
        return ns.threads
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def run_sweep(ns) -> tuple[str, int]:
    case = _case(ns)
    if ns.assignments:
        raise UsageError("sweep takes no name=value parameters")
    if ns.seed is None:
        raise UsageError("sweep needs --seed")
    if ns.samples < 1:
        raise UsageError("--samples must be at least 1")
    rep = sweep(case, ns.samples, ns.seed, _config(ns), threads=_threads(ns))
    if ns.format == "json":
        text = report.dumps(report.sweep_dict(rep, ns.verbose))
    elif ns.format == "csv":
        text = report.sweep_csv(rep, ns.verbose)
    else:
        text = report.sweep_text(rep, ns.verbose)
    code = {PASS: EXIT_PASS, DISCREPANCY: EXIT_DISCREPANCY}.get(rep.verdict, EXIT_FAIL)
    return text, code


def run_list(ns) -> tuple[str, int]:
    if ns.assignments:
        raise UsageError("list takes no name=value parameters")
    if ns.target == "identities":
        rows = [{"id": c.id, "group": c.group, "tag": c.tag,
                 "params": list(c.param_names), "point": list(c.point_names)}
                for c in sorted(CASES.values(), key=lambda c: c.id)]
    elif ns.target == "functions":
        rows = [{"id": name, "tag": fn.summary, "params": list(fn.params)}
                for name, fn in sorted(FUNCTIONS.items())]
    else:
        raise UsageError("list what? expected 'identities' or 'functions'")
    if ns.format == "json":
        return report.dumps(rows), EXIT_PASS
    if ns.format == "csv":
        return report._csv(["id", "tag", "params"],
                           [[r["id"], r["tag"], " ".join(r["params"] + r.get("point", []))]
                            for r in rows]), EXIT_PASS
    width = max(len(r["id"]) for r in rows)
    return "".join(f"{r['id']:<{width}}  {r['tag']}\n" for r in rows), EXIT_PASS


COMMANDS = {"eval": run_eval, "verify": run_verify, "sweep": run_sweep, "list": run_list}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kspecial",
        description="Evaluate k-special functions and verify their identities numerically.",
        epilog="exit status: 0 pass, 1 numeric failure, 2 domain or usage error, "
               "3 non-convergence, 4 suspected discrepancy in a printed identity")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("target", help="function id, identity id, or 'identities'/'functions' for list")
    p.add_argument("assignments", nargs="*", metavar="name=value")
    p.add_argument("--samples", type=int, default=100, help="sweep sample count (default 100)")
    p.add_argument("--seed", type=int, help="sweep seed (required for sweep)")
    p.add_argument("--rel-tol", type=float,
                   help="evaluator tolerance for eval; pass tolerance for verify and sweep")
    p.add_argument("--max-terms", type=int, help="series term budget")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", help="write to this path instead of standard output")
    p.add_argument("--verbose", action="store_true", help="include every sample in sweep output")
    p.add_argument("--threads", type=int, help=f"sweep worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--reading", choices=("printed", "corrected"), default="printed",
                   help="right side to verify where a corrected reading is registered")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        text, code = COMMANDS[ns.command](ns)
    except UsageError as exc:
        print(f"kspecial: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"kspecial: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"kspecial: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if ns.output:
        with open(ns.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
