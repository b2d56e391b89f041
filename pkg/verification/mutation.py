# verification/mutation.py
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

import mpmath

from algebra.rings import XSeriesRing
from algebra.torus import TorusElement
from algebra.xseries import XSeries
from core.errors import ParameterError, StructureError
from core.log import get_logger
from core.qcombinatorics import QBase, q_binomial, q_pochhammer_difference
from core.qscalar import Q, QScalar, ZERO
from group.blocks import BlockForm, building_block
from group.contexts import alt_fg_context, fg_context
from group.seed import square_bracket
from representations.generators import (
    Generators, Twist, cartan_diagonal, fundamental_rep, symmetric_rep_sl2, truncated_lowest_weight_rep, twist,
)
from representations.matrix import RingMatrix
from representations.qexp import element_power_diagonal, q_exp_matrix
from verification.types import Mismatch, Stopwatch, VerificationReport

logger = get_logger("verification.mutation")

DEFAULT_GUARD = 8
XSERIES = XSeriesRing()

MUTATION_TAG = (
    "e_q(q^H T+) x^H e_1/q(T- q^-H) = e_q(q^2H x/(q - 1/q)) e_1/q(q^H T-) x^-H e_q(T+ q^-H) "
    "e_1/q(q^-2H x/(1/q - q))"
)


# ============================================================
# SERIES PIECES
# ============================================================

def _x_power(k: int) -> XSeries:
    return XSeries.monomial(k)


def _x_inverse_power(k: int) -> XSeries:
    return XSeries.monomial(-k)


def _qexp(T: RingMatrix, base: QBase) -> RingMatrix:
    return q_exp_matrix(T.lift(XSERIES), base, max_terms=T.size + 1)


def mutation_lhs(H: RingMatrix, Tplus_hat: RingMatrix, Tminus_hat: RingMatrix) -> RingMatrix:
    """e_q(q^H T̂_+) x^H e_{1/q}(T̂_- q^{-H}), an exact Laurent polynomial matrix in x^{1/2}."""
    gens = _single_root(H, Tplus_hat, Tminus_hat)
    tw = twist(gens, Twist.POSITIVE)
    return (
        _qexp(tw.Tplus[0], QBase.Q)
        @ element_power_diagonal(XSERIES, H, _x_power)
        @ _qexp(tw.Tminus[0], QBase.INV_Q)
    )


def mutation_middle(H: RingMatrix, Tplus_hat: RingMatrix, Tminus_hat: RingMatrix) -> RingMatrix:
    """e_{1/q}(q^H T̂_-) x^{-H} e_q(T̂_+ q^{-H})"""
    gens = _single_root(H, Tplus_hat, Tminus_hat)
    tw = twist(gens, Twist.NEGATIVE)
    return (
        _qexp(tw.Tminus[0], QBase.INV_Q)
        @ element_power_diagonal(XSERIES, H, _x_inverse_power)
        @ _qexp(tw.Tplus[0], QBase.Q)
    )


def _single_root(H: RingMatrix, Tplus_hat: RingMatrix, Tminus_hat: RingMatrix) -> Generators:
    return Generators("root", H.size, [H], [Tplus_hat], [Tminus_hat], ((2,),))


@lru_cache(maxsize=None)
def _outer_sum(two_m: int, s: int) -> QScalar:
    """sum_n [s n] q^{2mn - n(n-1)/2} (-1)^{s-n} q^{(s-n)(s-n-1)/2}"""
    total = ZERO
    for n in range(s + 1):
        r = s - n
        sign = -1 if r % 2 else 1
        exponent = Fraction(two_m * n) - Fraction(n * (n - 1), 2) + Fraction(r * (r - 1), 2)
        total = total + q_binomial(s, n) * QScalar.q_power(exponent, sign)
    return total


def outer_factor_coefficient(h_i: Fraction, h_j: Fraction, s: int) -> QScalar:
    """
    x^s coefficient of e_q(q^{2h_i} x/(q - 1/q)) e_{1/q}(q^{-2h_j} x/(1/q - q)):
    q^{-2 h_j s} / prod_{t<=s} (q^t - q^-t) times the sum above with m = h_i + h_j.
    """
    two_m = int(2 * (h_i + h_j))
    return _outer_sum(two_m, s) * QScalar.q_power(-2 * h_j * s) / q_pochhammer_difference(s)


def outer_factor(h_i: Fraction, h_j: Fraction, order: int) -> XSeries:
    """The product of the two diagonal q-exponentials, known up to x^order."""
    terms = {2 * s: outer_factor_coefficient(h_i, h_j, s) for s in range(order + 1)}
    return XSeries(terms, precision=2 * (order + 1))


# ============================================================
# COEFFICIENTWISE COMPARISON
# ============================================================

def compare_mutation(
    report: VerificationReport, H: RingMatrix, Tplus_hat: RingMatrix, Tminus_hat: RingMatrix,
    guard: int, where: str = "",
) -> Tuple[int, int]:
    """Compare both sides in the doubled-degree window; returns the window."""
    lhs = mutation_lhs(H, Tplus_hat, Tminus_hat)
    middle = mutation_middle(H, Tplus_hat, Tminus_hat)
    h = cartan_diagonal(H)
    size = H.size

    lhs_degrees = [d for row in lhs.rows for x in row for d in x.terms]
    middle_vals = [x.valuation for row in middle.rows for x in row if not x.is_zero()]
    lo = min(lhs_degrees + middle_vals) - guard
    hi = max(lhs_degrees) + guard
    order = max(0, (hi - min(middle_vals)) // 2 + 1)

    factors: Dict[Tuple[Fraction, Fraction], XSeries] = {}
    bad = 0
    first: Optional[Mismatch] = None
    for i in range(size):
        for j in range(size):
            key = (h[i], h[j])
            if key not in factors:
                factors[key] = outer_factor(h[i], h[j], order)
            rhs = middle.rows[i][j] * factors[key]
            if rhs.precision is not None and rhs.precision <= hi:
                raise StructureError(
                    f"Right-hand side of entry ({i + 1},{j + 1}) known only below x^({rhs.precision}/2), "
                    f"window ends at {hi}"
                )
            left = lhs.rows[i][j]
            for d in range(lo, hi + 1):
                a, b = left.coefficient(d), rhs.coefficient(d)
                if a != b:
                    bad += 1
                    if first is None:
                        first = Mismatch(
                            location=f"entry ({i + 1},{j + 1}), coefficient of x^({d}/2)",
                            expected=b.to_text(), actual=a.to_text(), where=where,
                        )
    if first is not None:
        report.record(first, bad)
        logger.log(report.mismatch_log_level, "%s: %s", report.check, first.location)
    return lo, hi


# ============================================================
# CHECKS
# ============================================================

def verify_mutation(rep: Generators, guard: int = DEFAULT_GUARD) -> VerificationReport:
    if rep.rank != 1:
        raise ParameterError(f"Mutation check needs an sl_2 representation, got rank {rep.rank}")
    report = VerificationReport(
        check="mutation", eq_tag=MUTATION_TAG, params={"rep": rep.label, "guard": guard},
    )
    clock = Stopwatch()
    logger.info("mutation identity for %s, guard %d", rep.label, guard)
    lo, hi = compare_mutation(report, rep.H[0], rep.Tplus[0], rep.Tminus[0], guard)
    report.details["window"] = [lo, hi]
    if rep.label == "fund:2":
        extraction = extract_mutation_fundamental()
        report.details["substitution"] = {k: extraction[k] for k in ("a", "b", "c", "classical")}
        if not extraction["matches"]:
            report.record(Mismatch(
                location="extracted substitution",
                expected=extraction["expected"],
                actual=f"a = {extraction['a']}; c = {extraction['c']}",
            ))
    return clock.stop(report)


def verify_mutation_symmetric(k_max: int, guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Spin k/2 representations for k = 1..k_max in one report."""
    report = VerificationReport(
        check="mutation", eq_tag=MUTATION_TAG, params={"rep": f"sym:1..{k_max}", "guard": guard},
    )
    clock = Stopwatch()
    for k in range(1, k_max + 1):
        sub = verify_mutation(symmetric_rep_sl2(k), guard)
        report.merge(sub, prefix=f"sym:{k} ")
    report.details["dimensions"] = [2, k_max + 1]
    return clock.stop(report)


def verify_mutation_slN(n: int, i: int, guard: int = DEFAULT_GUARD) -> VerificationReport:
    """The sl_2 mutation identity for the generators of root [i] inside the fundamental of sl_{n+1}."""
    rep = fundamental_rep(n + 1)
    root = square_bracket(n, i)
    report = VerificationReport(
        check="mutation-sln", eq_tag=MUTATION_TAG,
        params={"n": n, "i": i, "root": root, "guard": guard},
    )
    clock = Stopwatch()
    logger.info("mutation identity for block %d (root %d) of sl_%d", i, root, n + 1)
    k = root - 1
    lo, hi = compare_mutation(report, rep.H[k], rep.Tplus[k], rep.Tminus[k], guard, where=f"root {root}")
    report.details["window"] = [lo, hi]
    return clock.stop(report)


# ============================================================
# SUBSTITUTION IN THE FUNDAMENTAL REPRESENTATION
# ============================================================

def _ratio(target: TorusElement, value: TorusElement) -> QScalar:
    """The scalar s with s * value = target, both single monomials with equal exponents."""
    e1, c1 = target.single_term()
    e2, c2 = value.single_term()
    if e1 != e2:
        raise StructureError(f"{value.to_text()} is not a scalar multiple of {target.to_text()}")
    return c1 / c2


def extract_mutation_fundamental() -> dict:
    """
    Equate the FG block with the FG-prime block in the fundamental representation:
    c from B_12^{-1} B_11, a from B_11 B_21^{-1}, b = 1/x, with the scalars fixed by the
    same expressions over the a, b, c torus.
    """
    rep = fundamental_rep(2)
    fg = fg_context(1)
    alt = alt_fg_context(1)
    B = building_block(1, 1, BlockForm.FG, rep, fg)
    Bp = building_block(1, 1, BlockForm.FG_PRIME, rep, alt)

    a_var = TorusElement.variable(alt, "a_1")
    b_var = TorusElement.variable(alt, "b_1")
    c_var = TorusElement.variable(alt, "c_1")
    kappa = _ratio(c_var, Bp.rows[0][1].inverse() * Bp.rows[0][0])
    lam = _ratio(a_var, Bp.rows[0][0] * Bp.rows[1][0].inverse())
    rho = _ratio(Bp.rows[0][0] * Bp.rows[0][0], a_var * b_var * c_var)

    c_img = (B.rows[0][1].inverse() * B.rows[0][0]).scale(kappa)
    a_img = (B.rows[0][0] * B.rows[1][0].inverse()).scale(lam)
    b_img = TorusElement.variable(fg, "x_1", -1)

    w = TorusElement.variable(fg, "w_1")
    x = TorusElement.variable(fg, "x_1")
    y = TorusElement.variable(fg, "y_1")
    a_expected = w + (w * x).scale(Q)
    c_expected = y + (y * x).scale(Q)
    consistent = (a_img * b_img * c_img).scale(rho) == B.rows[0][0] * B.rows[0][0]

    classical = {
        "a": str(a_img.to_classical()),
        "b": str(b_img.to_classical()),
        "c": str(c_img.to_classical()),
    }
    return {
        "a": a_img.to_text(),
        "b": b_img.to_text(),
        "c": c_img.to_text(),
        "classical": classical,
        "expected": f"a = {a_expected.to_text()}; c = {c_expected.to_text()}",
        "consistent": consistent,
        "matches": a_img == a_expected and c_img == c_expected and consistent,
        "elements": {"a": a_img, "b": b_img, "c": c_img},
    }


# ============================================================
# TRUNCATED LOWEST-WEIGHT MODULE (experimental)
# ============================================================

def _evaluate_series(x: XSeries, v0: mpmath.mpf, x0: mpmath.mpf) -> mpmath.mpf:
    total = mpmath.mpf(0)
    for d, c in x.terms.items():
        total += mpmath.mpf(c.evaluate(float(v0))) * x0 ** (mpmath.mpf(d) / 2)
    return total


def _outer_value(h_i: Fraction, h_j: Fraction, v0, x0, tol: float, max_terms: int) -> mpmath.mpf:
    total = mpmath.mpf(0)
    for s in range(max_terms):
        term = mpmath.mpf(outer_factor_coefficient(h_i, h_j, s).evaluate(float(v0))) * x0 ** s
        total += term
        if s > 2 and abs(term) < tol * max(abs(total), mpmath.mpf(1)):
            return total
    raise StructureError(f"Outer q-exponentials did not settle in {max_terms} terms")


def verify_mutation_infinite(
    M: int = 12, guard: int = 4, v0: float = 1.05, x0: float = 3.0, tol: float = 1e-6, max_terms: int = 200,
) -> VerificationReport:
    """
    Numeric comparison at q = v0^2 on the interior of the truncated lowest-weight module:
    the left side is summed over growing truncations, the right side uses exact finite middle entries.
    """
    report = VerificationReport(
        check="mutation-infinite", eq_tag=MUTATION_TAG,
        params={"M": M, "guard": guard, "v": v0, "x": x0, "tol": tol},
    )
    clock = Stopwatch()
    interior = M - guard
    if interior < 1:
        raise ParameterError(f"Interior block is empty for M = {M}, guard = {guard}")
    report.notes.append("experimental: not part of the acceptance profile")

    v = mpmath.mpf(v0)
    x = mpmath.mpf(x0)
    small = truncated_lowest_weight_rep(M)
    large = truncated_lowest_weight_rep(M + guard)
    lhs_small = mutation_lhs(small.H[0], small.Tplus[0], small.Tminus[0])
    lhs_large = mutation_lhs(large.H[0], large.Tplus[0], large.Tminus[0])
    middle = mutation_middle(large.H[0], large.Tplus[0], large.Tminus[0])
    h = cartan_diagonal(large.H[0])

    worst = 0.0
    unsettled = 0
    for i in range(interior):
        for j in range(interior):
            left = _evaluate_series(lhs_large.rows[i][j], v, x)
            previous = _evaluate_series(lhs_small.rows[i][j], v, x)
            scale = max(abs(left), mpmath.mpf(1e-300))
            if abs(left - previous) > tol * scale:
                unsettled += 1
                continue
            right = _evaluate_series(middle.rows[i][j], v, x) * _outer_value(h[i], h[j], v, x, tol * 1e-3, max_terms)
            rel = float(abs(left - right) / max(abs(left), abs(right), mpmath.mpf(1e-300)))
            worst = max(worst, rel)
            if rel > tol:
                report.record(Mismatch(
                    location=f"entry ({i + 1},{j + 1}) at x = {x0}",
                    expected=mpmath.nstr(right, 12), actual=mpmath.nstr(left, 12),
                ))
    report.details["max_relative_difference"] = worst
    if unsettled:
        report.notes.append(f"{unsettled} interior entries did not settle between truncations {M} and {M + guard}")
    return clock.stop(report)
