# verification/types.py
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class Mismatch:
    location: str
    expected: str
    actual: str
    where: str = ""

    def to_dict(self) -> dict:
        out = {"location": self.location, "expected": self.expected, "actual": self.actual}
        if self.where:
            out["where"] = self.where
        return out


@dataclass
class VerificationReport:
    check: str
    eq_tag: str
    params: Dict[str, Any]
    status: str = PASS
    mismatch: Optional[Mismatch] = None
    mismatch_count: int = 0
    elapsed_ms: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    # negative controls: mismatches are the intended outcome
    expect_failure: bool = field(default=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def mismatch_log_level(self) -> int:
        return logging.INFO if self.expect_failure else logging.WARNING

    def record(self, mismatch: Mismatch, count: int = 1):
        """Keep the first mismatch, count all of them."""
        if self.mismatch is None:
            self.mismatch = mismatch
        self.mismatch_count += count
        self.status = FAIL

    def merge(self, other: "VerificationReport", prefix: str = ""):
        if other.mismatch is not None:
            m = other.mismatch
            where = f"{prefix}{m.where}" if prefix else m.where
            self.record(Mismatch(m.location, m.expected, m.actual, where), other.mismatch_count)
        elif not other.passed:
            self.status = FAIL
        self.notes.extend(f"{prefix}{note}" for note in other.notes)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "eq_tag": self.eq_tag,
            "params": self.params,
            "status": self.status,
        }
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch.to_dict()
            out["mismatch_count"] = self.mismatch_count
        if timing and self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        if self.notes:
            out["notes"] = list(self.notes)
        if self.details:
            out["details"] = self.details
        return out


class Stopwatch:
    """Wall-clock milliseconds for a report."""

    def __init__(self):
        self.start = time.time()

    def stop(self, report: VerificationReport) -> VerificationReport:
        report.elapsed_ms = int((time.time() - self.start) * 1000)
        return report
