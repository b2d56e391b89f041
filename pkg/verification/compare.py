# verification/compare.py
from typing import Optional, Sequence, Tuple

from core.log import get_logger
from representations.matrix import RingMatrix
from verification.types import Mismatch, VerificationReport

logger = get_logger("verification")


def compare_matrices(
    report: VerificationReport,
    actual: RingMatrix,
    expected: RingMatrix,
    where: str = "",
    cells: Optional[Sequence[Tuple[int, int]]] = None,
) -> bool:
    """Record the first differing entry (1-based) and the number of differing entries."""
    if cells is None:
        cells = [(i, j) for i in range(actual.size) for j in range(actual.size)]
    first = actual.first_mismatch(expected, cells)
    if first is None:
        return True
    i, j, mine, theirs = first
    count = sum(1 for a, b in cells if actual.rows[a][b] != expected.rows[a][b])
    report.record(
        Mismatch(
            location=f"entry ({i + 1},{j + 1})",
            expected=actual.ring.to_text(theirs),
            actual=actual.ring.to_text(mine),
            where=where,
        ),
        count,
    )
    logger.log(
        report.mismatch_log_level, "%s: %s mismatch at entry (%d,%d)",
        report.check, where or "matrix", i + 1, j + 1,
    )
    return False


def compare_values(report: VerificationReport, actual, expected, where: str) -> bool:
    """Single ring elements (torus elements, series) compared exactly."""
    if actual == expected:
        return True
    report.record(Mismatch(location=where, expected=expected.to_text(), actual=actual.to_text()))
    logger.log(report.mismatch_log_level, "%s: mismatch in %s", report.check, where)
    return False


def compare_series_terms(report: VerificationReport, actual, expected, where: str) -> bool:
    """SkewSeries comparison reporting the lowest-degree differing coefficient."""
    if actual == expected:
        return True
    keys = set(actual.terms) | set(expected.terms)
    bad = sorted(
        (k for k in keys if actual.coefficient(*k) != expected.coefficient(*k)),
        key=lambda k: (k[0] + k[2], k),
    )
    a, m, b = bad[0]
    report.record(
        Mismatch(
            location=f"coefficient of psi^{a} Q^{m} chi^{b} (degree {a + b})",
            expected=expected.coefficient(a, m, b).to_text(),
            actual=actual.coefficient(a, m, b).to_text(),
            where=where,
        ),
        len(bad),
    )
    logger.log(report.mismatch_log_level, "%s: %s differs first at degree %d", report.check, where, a + b)
    return False
