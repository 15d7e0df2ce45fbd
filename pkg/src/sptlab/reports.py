"""Uniform pass/fail reporting for congruence and identity checks."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class CongruenceReport:
    check: str
    params: dict = field(default_factory=dict)
    n_verified: int = 0
    status: str = "pass"
    first_failure: dict | None = None
    elapsed_ms: float = 0.0

    @property
    def ok(self):
        return self.status == "pass"

    def to_dict(self):
        return {
            "check": self.check,
            "params": self.params,
            "n_verified": self.n_verified,
            "status": self.status,
            "first_failure": self.first_failure,
            "elapsed_ms": self.elapsed_ms,
        }

    def summary_line(self):
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        extras = " ".join(
            "%s=%s" % (k, v) for k, v in self.params.items() if k != "statement"
        )
        line = "%-4s %-28s %s  verified=%d  (%.0f ms)" % (
            tag,
            self.check,
            extras,
            self.n_verified,
            self.elapsed_ms,
        )
        if self.first_failure:
            line += "  first_failure=%r" % (self.first_failure,)
        return line

    @classmethod
    def merge(cls, check, params, subs):
        """Combine sub-reports; fails iff any sub-report fails."""
        failing = [s for s in subs if s.status == "fail"]
        rep = cls(
            check=check,
            params=dict(params, subchecks=[s.check for s in subs]),
            n_verified=sum(s.n_verified for s in subs),
            status="fail" if failing else "pass",
            first_failure=failing[0].first_failure if failing else None,
            elapsed_ms=sum(s.elapsed_ms for s in subs),
        )
        return rep


class _Recorder:
    def __init__(self, check, params):
        self.report = CongruenceReport(check=check, params=dict(params))

    def ok(self, n_verified):
        self.report.n_verified = n_verified
        self.report.status = "pass"

    def fail(self, n, lhs, rhs, n_verified=0, modulus=None):
        if modulus is None:
            modulus = self.report.params.get("modulus", 0)
        self.report.status = "fail"
        self.report.n_verified = n_verified
        self.report.first_failure = {
            "n": n,
            "lhs": int(lhs) if not isinstance(lhs, str) else lhs,
            "rhs": int(rhs) if not isinstance(rhs, str) else rhs,
            "modulus": modulus,
        }

    def skip(self, reason):
        self.report.status = "skipped"
        self.report.params["reason"] = reason


@contextmanager
def timed_report(check, params):
    rec = _Recorder(check, params)
    t0 = time.perf_counter()
    try:
        yield rec
    finally:
        rec.report.elapsed_ms = round((time.perf_counter() - t0) * 1000.0, 3)


def identity_report(check, lhs, rhs, params=None, lo=None, hi=None):
    """Compare two Series over their shared window and report."""
    params = dict(params or {})
    if lhs.modulus:
        params.setdefault("modulus", lhs.modulus)
    params.setdefault("grid24", lhs.frac24)
    with timed_report(check, params) as rec:
        w_lo = max(lhs.lo, rhs.lo) if lo is None else lo
        w_hi = min(lhs.valid_to, rhs.valid_to) if hi is None else hi
        diff = lhs.first_difference(rhs, w_lo, w_hi)
        if diff is None:
            rec.ok(max(0, w_hi - w_lo + 1))
        else:
            rec.fail(diff[0], diff[1], diff[2], n_verified=diff[0] - w_lo)
    return rec.report
