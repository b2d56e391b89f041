# verification/closed_forms.py
from algebra.torus import TorusElement
from core.errors import ParameterError
from core.log import get_logger
from core.qscalar import Q, QScalar
from group.contexts import apow_context, cpow_context
from representations.qexp import ClosedFormKind, qexp_matrix_direct, qexp_matrix_elements_closed_form
from verification.compare import compare_matrices, compare_values
from verification.types import Stopwatch, VerificationReport

logger = get_logger("verification.closed_forms")

DEFAULT_FORM_GUARD = 2


def a_power_closed_form(n: int) -> TorusElement:
    """w^n prod_{i=1..n} (1 + q^{2i-1} x) over x w = q^2 w x."""
    ctx = apow_context()
    x = TorusElement.variable(ctx, "x")
    result = TorusElement.variable(ctx, "w", n)
    for i in range(1, n + 1):
        result = result * (1 + x.scale(QScalar.q_power(2 * i - 1)))
    return result


def c_power_closed_form(n: int) -> TorusElement:
    """prod_{i=1..n} (1 + q^{-(2i-1)} x) y^n over x y = q^2 y x."""
    ctx = cpow_context()
    x = TorusElement.variable(ctx, "x")
    result = TorusElement.one(ctx)
    for i in range(1, n + 1):
        result = result * (1 + x.scale(QScalar.q_power(1 - 2 * i)))
    return result * TorusElement.variable(ctx, "y", n)


def verify_apow(n_max: int = 6) -> VerificationReport:
    """(w(1 + q x))^n and (y(1 + q x))^n against their product forms."""
    if n_max < 1:
        raise ParameterError(f"n_max must be at least 1, got {n_max}")
    report = VerificationReport(
        check="apow",
        eq_tag="a^n = w^n prod_{i=1..n} (1 + q^(2i-1) x); c^n = prod_{i=1..n} (1 + q^-(2i-1) x) y^n",
        params={"max_n": n_max},
    )
    clock = Stopwatch()
    logger.info("powers of the mutated variables up to %d", n_max)

    actx, cctx = apow_context(), cpow_context()
    a = TorusElement.variable(actx, "w") + (TorusElement.variable(actx, "w") * TorusElement.variable(actx, "x")).scale(Q)
    c = TorusElement.variable(cctx, "y") + (TorusElement.variable(cctx, "y") * TorusElement.variable(cctx, "x")).scale(Q)
    a_n = TorusElement.one(actx)
    c_n = TorusElement.one(cctx)
    for n in range(1, n_max + 1):
        a_n = a_n * a
        c_n = c_n * c
        compare_values(report, a_n, a_power_closed_form(n), f"a^{n}")
        compare_values(report, c_n, c_power_closed_form(n), f"c^{n}")
    report.details["a^2"] = a_power_closed_form(min(2, n_max)).to_text()
    return clock.stop(report)


def verify_qexp_closed_forms(M: int = 30, guard: int = DEFAULT_FORM_GUARD, kinds=None) -> VerificationReport:
    """q-binomial matrix elements against the direct q-exponential of the truncated generators."""
    if M < 4:
        raise ParameterError(f"Closed forms need a truncation of at least 4, got {M}")
    if not 1 <= M - guard:
        raise ParameterError(f"Guard {guard} leaves no interior block for M = {M}")
    kinds = list(kinds or ClosedFormKind)
    report = VerificationReport(
        check="qexp-forms",
        eq_tag="e_q(q^H T+)_ij = [j-1, i-1] q^-(j-i)(j-1) and the three companion forms",
        params={"M": M, "guard": guard, "kinds": [k.value for k in kinds]},
    )
    clock = Stopwatch()
    interior = M - guard
    cells = [(i, j) for i in range(interior) for j in range(interior)]
    for kind in kinds:
        logger.info("closed form %s on the %dx%d interior of trunc:%d", kind.value, interior, interior, M)
        direct, _ = qexp_matrix_direct(kind, M)
        closed = qexp_matrix_elements_closed_form(kind, M)
        compare_matrices(report, direct, closed, where=kind.value, cells=cells)
    report.details["interior"] = interior
    return clock.stop(report)
