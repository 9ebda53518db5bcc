"""Identity registry, sweep engine and report rendering."""

from .cases import CASES
from .generating import generating_lhs
from .registry import IdentityCase, SampleRecord, compare, rel_err, verify_identity
from .sweep import DISCREPANCY, FAIL, PASS, SweepReport, audit, sweep

__all__ = [
    "CASES", "IdentityCase", "SampleRecord", "SweepReport", "verify_identity", "sweep", "audit",
    "generating_lhs", "compare", "rel_err", "PASS", "FAIL", "DISCREPANCY",
]
