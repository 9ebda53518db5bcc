"""Canonical JSON, CSV and text renderings of results.

JSON output is byte-stable: keys are sorted, floats carry 17 significant
digits and non-finite floats become null.
"""

from __future__ import annotations

import csv
import io
import json
import math

from ..base import EvalResult
from .registry import SampleRecord
from .sweep import SweepReport


def _json(obj, indent: int, level: int = 0) -> str:
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json(obj[k], indent, level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Canonical JSON text with a trailing newline."""
    return _json(obj, indent) + "\n"


def eval_dict(function: str, args: dict, res: EvalResult) -> dict:
    return {"function": function, "args": dict(args), "value": res.value,
            "abs_err_estimate": res.abs_err_estimate, "terms_used": res.terms_used,
            "converged": res.converged}


def record_dict(case_id: str, rec: SampleRecord, rel_tol: float) -> dict:
    out = {"id": case_id, "params": rec.params, "point": rec.point, "lhs": rec.lhs,
           "rhs": rec.rhs, "lhs_err": rec.lhs_err, "rhs_err": rec.rhs_err,
           "abs_diff": rec.abs_diff, "rel_err": rec.rel_err, "rel_tol": rel_tol,
           "passed": rec.passed, "converged": rec.converged}
    if rec.error is not None:
        out["error"] = rec.error
    return out


def _failure(rec: SampleRecord) -> dict:
    out = {"params": rec.params, "point": rec.point, "lhs": rec.lhs, "rhs": rec.rhs,
           "rel_err": rec.rel_err}
    if rec.error is not None:
        out["error"] = rec.error
    return out


def sweep_dict(rep: SweepReport, verbose: bool = False) -> dict:
    out = {"id": rep.id, "seed": rep.seed, "samples": rep.samples, "passes": rep.passes,
           "max_rel_err": rep.max_rel_err, "median_rel_err": rep.median_rel_err,
           "rel_tol": rep.rel_tol, "domain_errors": rep.domain_errors,
           "nonconverged": rep.nonconverged, "verdict": rep.verdict,
           "failures": [_failure(r) for r in rep.failures]}
    if rep.audit is not None:
        out["audit"] = rep.audit
    if rep.note:
        out["note"] = rep.note
    if verbose:
        out["records"] = [_failure(r) | {"passed": r.passed, "converged": r.converged}
                          for r in rep.records]
    return out


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else ""
    return "" if v is None else str(v)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def eval_csv(function: str, args: dict, res: EvalResult) -> str:
    d = eval_dict(function, args, res)
    names = sorted(args)
    return _csv(["function", *names, "value", "abs_err_estimate", "terms_used", "converged"],
                [[function, *(args[n] for n in names), d["value"], d["abs_err_estimate"],
                  d["terms_used"], d["converged"]]])


def _sample_columns(recs: list[SampleRecord]) -> tuple[list[str], list[str]]:
    params = sorted({n for r in recs for n in r.params})
    point = sorted({n for r in recs for n in r.point})
    return params, point


def records_csv(case_id: str, recs: list[SampleRecord]) -> str:
    """One row per sample, parameters and point coordinates as columns."""
    params, point = _sample_columns(recs)
    header = ["id", "index", *params, *point, "lhs", "rhs", "rel_err", "passed", "converged", "error"]
    rows = [[case_id, i, *(r.params.get(n) for n in params), *(r.point.get(n) for n in point),
             r.lhs, r.rhs, r.rel_err, r.passed, r.converged, r.error]
            for i, r in enumerate(recs)]
    return _csv(header, rows)


def sweep_csv(rep: SweepReport, verbose: bool = False) -> str:
    if verbose:
        return records_csv(rep.id, rep.records)
    return _csv(["id", "seed", "samples", "passes", "max_rel_err", "median_rel_err", "rel_tol",
                 "domain_errors", "nonconverged", "verdict"],
                [[rep.id, rep.seed, rep.samples, rep.passes, rep.max_rel_err, rep.median_rel_err,
                  rep.rel_tol, rep.domain_errors, rep.nonconverged, rep.verdict]])


def _g(v) -> str:
    return format(v, ".9g") if isinstance(v, float) else str(v)


def _kv(d: dict) -> str:
    return " ".join(f"{k}={_g(d[k])}" for k in sorted(d))


def eval_text(function: str, args: dict, res: EvalResult) -> str:
    flag = "" if res.converged else "  (not converged)"
    return (f"{function}({_kv(args)}) = {_g(res.value)}\n"
            f"  abs_err_estimate={_g(res.abs_err_estimate)} terms_used={res.terms_used}{flag}\n")


def record_text(case_id: str, rec: SampleRecord, rel_tol: float) -> str:
    head = f"{case_id}: {'pass' if rec.passed else 'FAIL'}  {_kv(rec.params)} {_kv(rec.point)}".rstrip()
    if rec.error is not None:
        return f"{head}\n  domain error: {rec.error}\n"
    return (f"{head}\n  lhs={_g(rec.lhs)} rhs={_g(rec.rhs)}\n"
            f"  rel_err={_g(rec.rel_err)} rel_tol={_g(rel_tol)} converged={rec.converged}\n")


def sweep_text(rep: SweepReport, verbose: bool = False) -> str:
    lines = [f"{rep.id}: {rep.verdict}  {rep.passes}/{rep.samples} passed  seed={rep.seed}",
             f"  max_rel_err={_g(rep.max_rel_err)} median_rel_err={_g(rep.median_rel_err)} "
             f"rel_tol={_g(rep.rel_tol)}"]
    if rep.note:
        lines.append(f"  note: {rep.note}")
    if rep.domain_errors or rep.nonconverged:
        lines.append(f"  domain_errors={rep.domain_errors} nonconverged={rep.nonconverged}")
    shown = rep.records if verbose else rep.failures[:5]
    for r in shown:
        lines.append(f"  {'pass' if r.passed else 'FAIL'} {_kv(r.params)} {_kv(r.point)}  "
                     f"lhs={_g(r.lhs)} rhs={_g(r.rhs)} rel_err={_g(r.rel_err)}"
                     + (f"  [{r.error}]" if r.error else ""))
    if not verbose and len(rep.failures) > 5:
        lines.append(f"  ... {len(rep.failures) - 5} more failures")
    if rep.audit is not None:
        lines.append("  audit:")
        lines.extend(f"    {k}: {_g(v)}" for k, v in sorted(rep.audit.items()))
    return "\n".join(lines) + "\n"
