# group/blocks.py
from enum import Enum
from fractions import Fraction
from typing import Callable

from algebra.rings import BaseRing, TorusRing
from algebra.torus import TorusContext, TorusElement
from core.errors import ParameterError
from core.qcombinatorics import QBase
from group.contexts import ALT_FG_NAMES, ALT_MV_NAMES, FG_NAMES, MV_NAMES, block_variables
from group.seed import square_bracket
from representations.generators import Generators, Twist, twist
from representations.matrix import RingMatrix
from representations.qexp import element_power_diagonal, q_exp_matrix

# power(k) returns the ring element z^{k/2}
HalfPower = Callable[[int], object]


class BlockForm(Enum):
    MV = "mv"
    FG = "fg"
    MV_PRIME = "mv-prime"
    FG_PRIME = "fg-prime"

    @classmethod
    def parse(cls, text: str) -> "BlockForm":
        for form in cls:
            if text in (form.value, form.name, form.name.lower()):
                return form
        known = ", ".join(f.value for f in cls)
        raise ParameterError(f"Unknown block form: {text}. Known: {known}")

    @property
    def twist(self) -> Twist:
        return Twist.POSITIVE if self in (BlockForm.MV, BlockForm.FG) else Twist.NEGATIVE

    @property
    def names(self) -> tuple:
        return {
            BlockForm.MV: MV_NAMES,
            BlockForm.FG: FG_NAMES,
            BlockForm.MV_PRIME: ALT_MV_NAMES,
            BlockForm.FG_PRIME: ALT_FG_NAMES,
        }[self]


# ============================================================
# RING-GENERIC FORMS
# ============================================================

def _qexp(ring: BaseRing, T: RingMatrix, coefficient, base: QBase) -> RingMatrix:
    A = T.lift(ring)
    if coefficient is not None:
        A = A.left_scale(coefficient)
    return q_exp_matrix(A, base, max_terms=T.size + 1)


def mv_form(ring: BaseRing, H: RingMatrix, Tplus: RingMatrix, Tminus: RingMatrix,
            psi, phi_power: HalfPower, chi) -> RingMatrix:
    """e_q(psi T_+) q^{phi H} e_{1/q}(chi T_-)"""
    return (
        _qexp(ring, Tplus, psi, QBase.Q)
        @ element_power_diagonal(ring, H, phi_power)
        @ _qexp(ring, Tminus, chi, QBase.INV_Q)
    )


def mv_prime_form(ring: BaseRing, H: RingMatrix, Tplus: RingMatrix, Tminus: RingMatrix,
                  alpha, beta_power: HalfPower, gamma) -> RingMatrix:
    """e_{1/q}(alpha T_-) q^{beta H} e_q(gamma T_+)"""
    return (
        _qexp(ring, Tminus, alpha, QBase.INV_Q)
        @ element_power_diagonal(ring, H, beta_power)
        @ _qexp(ring, Tplus, gamma, QBase.Q)
    )


def fg_form(ring: BaseRing, H: RingMatrix, Tplus: RingMatrix, Tminus: RingMatrix,
            w_power: HalfPower, x_power: HalfPower, y_power: HalfPower = None) -> RingMatrix:
    """w^H e_q(T_+) x^H e_{1/q}(T_-) y^H; without y_power the last factor is dropped."""
    M = (
        element_power_diagonal(ring, H, w_power)
        @ _qexp(ring, Tplus, None, QBase.Q)
        @ element_power_diagonal(ring, H, x_power)
        @ _qexp(ring, Tminus, None, QBase.INV_Q)
    )
    if y_power is not None:
        M = M @ element_power_diagonal(ring, H, y_power)
    return M


def fg_prime_form(ring: BaseRing, H: RingMatrix, Tplus: RingMatrix, Tminus: RingMatrix,
                  a_power: HalfPower, b_power: HalfPower, c_power: HalfPower) -> RingMatrix:
    """a^H e_{1/q}(T_-) b^H e_q(T_+) c^H"""
    return (
        element_power_diagonal(ring, H, a_power)
        @ _qexp(ring, Tminus, None, QBase.INV_Q)
        @ element_power_diagonal(ring, H, b_power)
        @ _qexp(ring, Tplus, None, QBase.Q)
        @ element_power_diagonal(ring, H, c_power)
    )


def torus_half_power(ctx: TorusContext, name: str) -> HalfPower:
    def power(k: int) -> TorusElement:
        return TorusElement.variable(ctx, name, Fraction(k, 2))
    return power


# ============================================================
# BUILDING BLOCKS
# ============================================================

def root_generators(rep: Generators, root: int):
    if not 1 <= root <= rep.rank:
        raise ParameterError(f"Representation {rep.label} has no simple root {root} (rank {rep.rank})")
    return root - 1


def building_block(n: int, i: int, form: BlockForm, rep: Generators, ctx: TorusContext) -> RingMatrix:
    """Block B(i) over the torus, twisted according to the form."""
    k = root_generators(rep, square_bracket(n, i))
    tw = twist(rep, form.twist)
    H, Tp, Tm = rep.H[k], tw.Tplus[k], tw.Tminus[k]
    ring = TorusRing(ctx)
    first, middle, last = block_variables(form.names, i)

    if form is BlockForm.MV:
        return mv_form(
            ring, H, Tp, Tm,
            TorusElement.variable(ctx, first), torus_half_power(ctx, middle), TorusElement.variable(ctx, last),
        )
    if form is BlockForm.MV_PRIME:
        return mv_prime_form(
            ring, H, Tp, Tm,
            TorusElement.variable(ctx, first), torus_half_power(ctx, middle), TorusElement.variable(ctx, last),
        )
    if form is BlockForm.FG:
        return fg_form(
            ring, H, Tp, Tm,
            torus_half_power(ctx, first), torus_half_power(ctx, middle), torus_half_power(ctx, last),
        )
    return fg_prime_form(
        ring, H, Tp, Tm,
        torus_half_power(ctx, first), torus_half_power(ctx, middle), torus_half_power(ctx, last),
    )
