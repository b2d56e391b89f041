# representations/qexp.py
from enum import Enum
from fractions import Fraction
from typing import Callable, Tuple

from algebra.rings import BaseRing, TorusRing
from algebra.torus import TorusContext, TorusElement
from core.errors import NotNilpotent
from core.qcombinatorics import QBase, q_binomial
from core.qscalar import QScalar, ZERO
from representations.generators import Generators, Twist, cartan_diagonal, truncated_lowest_weight_rep, twist
from representations.matrix import RingMatrix

DEFAULT_MAX_TERMS = 64


def q_exp_matrix(A: RingMatrix, base: QBase = QBase.Q, max_terms: int = DEFAULT_MAX_TERMS) -> RingMatrix:
    """sum_n A^n / [n]! base^{-n(n-1)/2}, stopping at the first vanishing power."""
    total = RingMatrix.identity(A.ring, A.size)
    power = total
    for n in range(1, max_terms + 2):
        power = power @ A
        if power.is_zero():
            return total
        if n > max_terms:
            break
        total = total + power.scale(base.coefficient(n))
    raise NotNilpotent(f"No power of the {A.size}x{A.size} argument up to {max_terms} vanishes")


def diagonal_power(var: str, H: RingMatrix, ctx: TorusContext) -> RingMatrix:
    """diag(var^{h_ii}) over the torus; h_ii must be half-integers."""
    ring = TorusRing(ctx)
    entries = [TorusElement.variable(ctx, var, h) for h in cartan_diagonal(H)]
    return RingMatrix.diagonal(ring, entries)


def element_power_diagonal(ring: BaseRing, H: RingMatrix, power: Callable[[int], object]) -> RingMatrix:
    """diag(power(2 h_ii)) for a ring-valued half power, e.g. Q^{2h} with Q = q^{phi/2}."""
    return RingMatrix.diagonal(ring, [power(int(2 * h)) for h in cartan_diagonal(H)])


# ============================================================
# CLOSED-FORM MATRIX ELEMENTS (truncated lowest-weight rep)
# ============================================================

class ClosedFormKind(Enum):
    EQ_QH_TPLUS = "e_q(q^H T+)"
    EINV_TMINUS_QH = "e_1/q(T- q^-H)"
    EINV_QH_TMINUS = "e_1/q(q^H T-)"
    EQ_TPLUS_QH = "e_q(T+ q^-H)"

    @classmethod
    def parse(cls, text: str) -> "ClosedFormKind":
        for kind in cls:
            if text in (kind.value, kind.name, kind.name.lower()):
                return kind
        known = ", ".join(k.value for k in cls)
        raise ValueError(f"Unknown closed-form kind: {text}. Known: {known}")

    @property
    def base(self) -> QBase:
        return QBase.Q if self in (ClosedFormKind.EQ_QH_TPLUS, ClosedFormKind.EQ_TPLUS_QH) else QBase.INV_Q

    def argument(self, gens: Generators) -> RingMatrix:
        """The twisted generator whose q-exponential the closed form describes."""
        if self is ClosedFormKind.EQ_QH_TPLUS:
            return twist(gens, Twist.POSITIVE).Tplus[0]
        if self is ClosedFormKind.EINV_TMINUS_QH:
            return twist(gens, Twist.POSITIVE).Tminus[0]
        if self is ClosedFormKind.EINV_QH_TMINUS:
            return twist(gens, Twist.NEGATIVE).Tminus[0]
        return twist(gens, Twist.NEGATIVE).Tplus[0]

    def entry(self, i: int, j: int) -> QScalar:
        """1-based (i, j) element."""
        if self is ClosedFormKind.EQ_QH_TPLUS:
            return q_binomial(j - 1, i - 1) * QScalar.q_power(-(j - i) * (j - 1)) if j >= i else ZERO
        if self is ClosedFormKind.EQ_TPLUS_QH:
            return q_binomial(j - 1, i - 1) * QScalar.q_power((j - i) * (i + 1)) if j >= i else ZERO
        if i < j:
            return ZERO
        sign = -1 if (i - j) % 2 else 1
        if self is ClosedFormKind.EINV_TMINUS_QH:
            return q_binomial(i, j) * QScalar.q_power((i - j) * (i - 1), sign)
        return q_binomial(i, j) * QScalar.q_power(-(i - j) * (j + 1), sign)


def qexp_matrix_elements_closed_form(kind: ClosedFormKind, M: int) -> RingMatrix:
    return RingMatrix.from_scalars([
        [kind.entry(i, j) for j in range(1, M + 1)] for i in range(1, M + 1)
    ])


def qexp_matrix_direct(kind: ClosedFormKind, M: int) -> Tuple[RingMatrix, Generators]:
    gens = truncated_lowest_weight_rep(M)
    return q_exp_matrix(kind.argument(gens), kind.base, max_terms=M + 1), gens
