# verification/series_checks.py
from typing import Optional, Tuple

from algebra.rings import SeriesRing
from algebra.skew_series import SeriesContext, SkewSeries, qexp_series, quantum_plane
from core.errors import ParameterError
from core.log import get_logger
from core.qcombinatorics import QBase
from core.qscalar import QScalar
from group.blocks import mv_form, mv_prime_form
from representations.generators import Generators, Twist, fundamental_rep, twist
from verification.compare import compare_matrices, compare_series_terms
from verification.types import Mismatch, Stopwatch, VerificationReport

logger = get_logger("verification.series")

DEFAULT_DEGREE = 8


# ============================================================
# q-EXPONENTIAL FACTORIZATION
# ============================================================

def check_qexp_factorization(
    degree: int = 12, base: QBase = QBase.Q, xy_phase: Optional[int] = None,
) -> VerificationReport:
    """
    e_b(y) e_b(x) = e_b(x + y) on the quantum plane x y = q^{xy_phase} y x.
    The matching phase is 2 for base q and -2 for base 1/q.
    """
    if degree < 2:
        raise ParameterError(f"Factorization check needs degree >= 2, got {degree}")
    if xy_phase is None:
        xy_phase = 2 if base is QBase.Q else -2
    report = VerificationReport(
        check="qexp-fact",
        eq_tag=f"e_{base.value}(y) e_{base.value}(x) = e_{base.value}(x + y) when x y = q^{xy_phase} y x",
        params={"degree": degree, "base": base.value, "xy_phase": xy_phase},
    )
    clock = Stopwatch()
    logger.info("qexp factorization: base %s, phase %d, degree %d", base.value, xy_phase, degree)

    ctx = quantum_plane(degree, xy_phase)
    x = SkewSeries.chi(ctx)
    y = SkewSeries.psi(ctx)
    lhs = qexp_series(y, base) * qexp_series(x, base)
    rhs = qexp_series(x + y, base)
    _compare_plane(report, lhs, rhs)
    return clock.stop(report)


def _compare_plane(report: VerificationReport, lhs: SkewSeries, rhs: SkewSeries):
    if lhs == rhs:
        return
    keys = set(lhs.terms) | set(rhs.terms)
    bad = sorted((k for k in keys if lhs.coefficient(*k) != rhs.coefficient(*k)), key=lambda k: (k[0] + k[2], k))
    a, _, b = bad[0]
    report.record(
        Mismatch(
            location=f"coefficient of y^{a} x^{b} (degree {a + b})",
            expected=rhs.coefficient(*bad[0]).to_text(),
            actual=lhs.coefficient(*bad[0]).to_text(),
        ),
        len(bad),
    )
    report.details["first_failing_degree"] = a + b


# ============================================================
# ALPHA, BETA, GAMMA THROUGH PSI, PHI, CHI
# ============================================================

def mv_series_context(degree: int) -> SeriesContext:
    """Q = q^{phi/2} with Q psi = q psi Q, Q chi = q chi Q, psi chi = chi psi."""
    return SeriesContext(degree=degree, q_psi=1, q_chi=1, chi_psi=0)


def albega_series(ctx: SeriesContext, perturbed: bool = False) -> Tuple[SkewSeries, SkewSeries, SkewSeries]:
    """
    q^{beta/2} = Q + psi Q^{-1} chi
    alpha = Q^{-1} chi Q^{-1} (1 + psi Q^{-1} chi Q^{-1})^{-1}
    gamma = (1 + Q^{-1} psi Q^{-1} chi)^{-1} Q^{-1} psi Q^{-1}

    perturbed: q^{beta/2} = Q + psi Q chi, alpha = Q^{-1} chi P^{-1}, gamma = P^{-1} psi Q^{-1}.
    """
    psi = SkewSeries.psi(ctx)
    chi = SkewSeries.chi(ctx)
    Qh = SkewSeries.q_half_phi(ctx)
    Qh_inv = SkewSeries.q_half_phi(ctx, -1)

    if perturbed:
        P = Qh + psi * Qh * chi
        P_inv = P.inverse()
        return Qh_inv * chi * P_inv, P, P_inv * psi * Qh_inv

    P = Qh + psi * Qh_inv * chi
    alpha = Qh_inv * chi * Qh_inv * (1 + psi * Qh_inv * chi * Qh_inv).inverse()
    gamma = (1 + Qh_inv * psi * Qh_inv * chi).inverse() * Qh_inv * psi * Qh_inv
    return alpha, P, gamma


def compute_albega(degree: int = DEFAULT_DEGREE, perturbed: bool = False):
    """Returns (alpha, q^{beta/2}, gamma, report)."""
    if degree < 1:
        raise ParameterError(f"Truncation degree must be at least 1, got {degree}")
    report = VerificationReport(
        check="appendix-a",
        eq_tag="q^{-phi/2} = alpha q^{beta/2} gamma + q^{-beta/2}; q^beta alpha = q^2 alpha q^beta; "
               "q^beta gamma = q^2 gamma q^beta; alpha gamma = gamma alpha",
        params={"degree": degree, "perturbed": perturbed},
    )
    clock = Stopwatch()
    logger.info("alpha/beta/gamma series at degree %d%s", degree, " (perturbed)" if perturbed else "")

    ctx = mv_series_context(degree)
    alpha, P, gamma = albega_series(ctx, perturbed)
    psi = SkewSeries.psi(ctx)
    chi = SkewSeries.chi(ctx)
    Qh_inv = SkewSeries.q_half_phi(ctx, -1)
    P_inv = P.inverse()

    if not perturbed:
        compare_series_terms(report, alpha, Qh_inv * chi * P_inv, "alpha = q^{-phi/2} chi q^{-beta/2}")
        compare_series_terms(report, gamma, P_inv * psi * Qh_inv, "gamma = q^{-beta/2} psi q^{-phi/2}")

    compare_series_terms(report, alpha * P * gamma + P_inv, Qh_inv, "alpha q^{beta/2} gamma + q^{-beta/2}")
    P2 = P * P
    q_squared = QScalar.q_power(2)
    compare_series_terms(report, P2 * alpha, (alpha * P2).scale(q_squared), "q^beta alpha = q^2 alpha q^beta")
    compare_series_terms(report, P2 * gamma, (gamma * P2).scale(q_squared), "q^beta gamma = q^2 gamma q^beta")
    commutes = compare_series_terms(report, alpha * gamma, gamma * alpha, "alpha gamma = gamma alpha")
    report.details["alpha_gamma_commute"] = commutes

    report.details["q_beta_half"] = P.to_text()
    return alpha, P, gamma, clock.stop(report)


# ============================================================
# MV AGAINST MV-PRIME OVER SERIES
# ============================================================

def verify_fourth_mv_equation(
    rep: Optional[Generators] = None, degree: int = DEFAULT_DEGREE, perturbed: bool = False,
) -> VerificationReport:
    """
    e_q(psi T_+) Q^{2H} e_{1/q}(chi T_-) = e_{1/q}(alpha T_-) P^{2H} e_q(gamma T_+)
    with alpha, P = q^{beta/2}, gamma from the series above, block by block over every simple root.
    perturbed replaces gamma by q^{-phi/2} psi q^{-phi/2}.
    """
    rep = rep or fundamental_rep(2)
    report = VerificationReport(
        check="fourth-mv",
        eq_tag="e_q(psi T+) q^{phi H} e_1/q(chi T-) = e_1/q(alpha T-) q^{beta H} e_q(gamma T+)",
        params={"rep": rep.label, "degree": degree, "perturbed": perturbed},
    )
    clock = Stopwatch()
    logger.info("MV against MV-prime over series: %s, degree %d", rep.label, degree)

    ctx = mv_series_context(degree)
    ring = SeriesRing(ctx)
    alpha, P, gamma = albega_series(ctx)
    psi = SkewSeries.psi(ctx)
    chi = SkewSeries.chi(ctx)
    if perturbed:
        Qh_inv = SkewSeries.q_half_phi(ctx, -1)
        gamma = Qh_inv * psi * Qh_inv

    powers = {}

    def p_power(k: int) -> SkewSeries:
        if k not in powers:
            powers[k] = P ** k
        return powers[k]

    def q_power(k: int) -> SkewSeries:
        return SkewSeries.q_half_phi(ctx, k)

    positive = twist(rep, Twist.POSITIVE)
    negative = twist(rep, Twist.NEGATIVE)
    for k in range(rep.rank):
        mv = mv_form(ring, rep.H[k], positive.Tplus[k], positive.Tminus[k], psi, q_power, chi)
        prime = mv_prime_form(ring, rep.H[k], negative.Tplus[k], negative.Tminus[k], alpha, p_power, gamma)
        compare_matrices(report, prime, mv, where=f"root {k + 1}")
    return clock.stop(report)
