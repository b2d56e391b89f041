# verification/hypergeometric.py
import math
from typing import List, Sequence, Tuple

import mpmath
import numpy as np
from scipy import special

from core.errors import ConvergenceFailure, ParameterError
from core.log import get_logger
from verification.types import Mismatch, Stopwatch, VerificationReport

logger = get_logger("verification.hyper")

DEFAULT_XS = (2.0, 10.0)
DEFAULT_TOL = 1e-9
DEFAULT_ATOL = 1e-25
DEFAULT_MAX_TERMS = 20000
BASE_DPS = 30

HYPER_TAG = (
    "x^-m G(m)/(G(n) G(m-n+1)) 2F1(m, m+1; m-n+1; -1/x) = (-1)^(n+1) n x/(1+x)^(m+n) 2F1(1-m, 1-n; 2; -x)"
)


# ============================================================
# SIDES
# ============================================================

def _lhs_partial_sums(n: int, m: int, x: mpmath.mpf, max_terms: int) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """Returns (sum, largest term magnitude) of 2F1(m, m+1; m-n+1; -1/x)."""
    z = -1 / x
    c = m - n + 1
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    largest = mpmath.mpf(1)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps - 5))
    for k in range(max_terms):
        ratio = mpmath.mpf((m + k) * (m + 1 + k)) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        largest = max(largest, abs(term))
        # past the peak the tail is bounded by a geometric series; the floor is
        # measured against the largest term so a vanishing sum still stops
        if abs(ratio) < 1 and abs(term) / (1 - abs(ratio)) <= eps * max(abs(total), largest):
            return total, largest
    raise ConvergenceFailure(terms=max_terms, last_term=mpmath.nstr(term, 6))


def hyper_lhs(n: int, m: int, x: float, max_terms: int = DEFAULT_MAX_TERMS) -> mpmath.mpf:
    """Partial sums with working precision raised until cancellation is covered.

    A sum that stays at the rounding floor at two successive precisions is zero.
    """
    dps = BASE_DPS
    at_floor = False
    while True:
        with mpmath.workdps(dps):
            xm = mpmath.mpf(x)
            total, largest = _lhs_partial_sums(n, m, xm, max_terms)
            lost = 0 if total == 0 else int(mpmath.log10(largest / abs(total))) + 1
            if lost + 20 <= dps:
                prefactor = mpmath.binomial(m - 1, n - 1) * xm ** (-m)
                return +(prefactor * total)
            if lost + 10 >= dps:
                if at_floor:
                    logger.debug("n = %d, m = %d, x = %s: sum vanishes at %d digits", n, m, x, dps)
                    return mpmath.mpf(0)
                at_floor = True
            else:
                at_floor = False
        dps = lost + BASE_DPS


def hyper_rhs(n: int, m: int, x: float) -> mpmath.mpf:
    """Terminating 2F1(1-m, 1-n; 2; -x) with its prefactor."""
    with mpmath.workdps(BASE_DPS + 2 * (m + n)):
        xm = mpmath.mpf(x)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        for k in range(n - 1):
            term *= mpmath.mpf((1 - m + k) * (1 - n + k)) / ((2 + k) * (k + 1)) * (-xm)
            total += term
        sign = 1 if (n + 1) % 2 == 0 else -1
        return +(sign * n * xm / (1 + xm) ** (m + n) * total)


def scipy_lhs(n: int, m: int, x: float) -> float:
    """Double-precision value of the left side through scipy, used as an independent oracle."""
    prefactor = math.exp(special.gammaln(m) - special.gammaln(n) - special.gammaln(m - n + 1))
    return prefactor * x ** (-m) * special.hyp2f1(m, m + 1, m - n + 1, -1.0 / x)


# ============================================================
# CHECK
# ============================================================

def verify_hypergeometric_q1(
    n_max: int = 25, k_max: int = 10, xs: Sequence[float] = DEFAULT_XS, tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS, atol: float = DEFAULT_ATOL,
) -> VerificationReport:
    if n_max < 1 or k_max < 0:
        raise ParameterError(f"Need n_max >= 1 and k_max >= 0, got {n_max}, {k_max}")
    if tol <= 0 or atol < 0:
        raise ParameterError(f"Need tol > 0 and atol >= 0, got {tol}, {atol}")
    for x in xs:
        if abs(x) <= 1:
            raise ParameterError(f"The left side converges only for |x| > 1, got x = {x}")

    report = VerificationReport(
        check="hyper", eq_tag=HYPER_TAG,
        params={"max_n": n_max, "max_k": k_max, "xs": list(xs), "tol": tol},
    )
    clock = Stopwatch()
    logger.info("hypergeometric identity at q = 1: n <= %d, k <= %d, x in %s", n_max, k_max, list(xs))

    cases: List[Tuple[int, int, float]] = []
    lhs_values, rhs_values = [], []
    for x in xs:
        for n in range(1, n_max + 1):
            for k in range(k_max + 1):
                m = n + k
                cases.append((n, m, x))
                lhs_values.append(hyper_lhs(n, m, x, max_terms))
                rhs_values.append(hyper_rhs(n, m, x))

    # differences taken in extended precision, compared as floats
    diff = np.array([float(abs(a - b)) for a, b in zip(lhs_values, rhs_values)])
    scale = np.array([float(max(abs(a), abs(b))) for a, b in zip(lhs_values, rhs_values)])
    bad = np.nonzero(diff > tol * scale + atol)[0]
    rel = np.divide(diff, scale, out=np.zeros_like(diff), where=scale > atol)
    if bad.size:
        i = int(bad[0])
        n, m, x = cases[i]
        report.record(
            Mismatch(
                location=f"n = {n}, m = {m}, x = {x}",
                expected=mpmath.nstr(rhs_values[i], 17),
                actual=mpmath.nstr(lhs_values[i], 17),
            ),
            int(bad.size),
        )
    report.details["cases"] = len(cases)
    report.details["max_relative_difference"] = float(rel.max()) if rel.size else 0.0
    report.details["max_absolute_difference"] = float(diff.max()) if diff.size else 0.0
    report.details["zero_cases"] = int(np.count_nonzero(scale <= atol))

    oracle = np.array([scipy_lhs(n, m, x) for n, m, x in cases])
    ours = np.array([float(v) for v in lhs_values])
    finite = np.isfinite(oracle) & (np.abs(ours) > atol)
    if finite.any():
        spread = np.abs(oracle[finite] - ours[finite]) / np.abs(ours[finite])
        report.notes.append(f"scipy hyp2f1 agrees with the partial sums to {float(spread.max()):.1e} (double precision)")
    return clock.stop(report)
