# group/element.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import sympy

from algebra.rings import TorusRing
from algebra.torus import TorusContext, TorusElement
from core.errors import ParameterError
from core.log import get_logger
from core.qcombinatorics import QBase
from group.blocks import BlockForm, building_block, fg_form, mv_form, root_generators, torus_half_power
from group.contexts import (
    FG_NAMES, MV_NAMES, alt_fg_context, alt_mv_context, block_variables, fg_context, leaf_context, mv_context,
)
from group.seed import block_count, square_bracket
from representations.generators import Generators, Twist, cartan_q_power, fundamental_rep, twist
from representations.matrix import RingMatrix, kron
from representations.qexp import element_power_diagonal, q_exp_matrix

logger = get_logger("group")


@dataclass
class GroupElement:
    n: int
    form: BlockForm
    rep: Generators
    ctx: TorusContext
    matrix: RingMatrix
    blocks: List[RingMatrix] = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.size

    def classical(self) -> sympy.Matrix:
        return classical_limit(self.matrix)


def default_context(form: BlockForm, n: int) -> TorusContext:
    return {
        BlockForm.MV: mv_context,
        BlockForm.FG: fg_context,
        BlockForm.MV_PRIME: alt_mv_context,
        BlockForm.FG_PRIME: alt_fg_context,
    }[form](n)


def ordered_product(blocks: List[RingMatrix]) -> RingMatrix:
    result = blocks[0]
    for block in blocks[1:]:
        result = result @ block
    return result


def group_element(n: int, form: BlockForm, rep: Generators, ctx: Optional[TorusContext] = None) -> GroupElement:
    """g = B(1) B(2) ... B(n(n+1)/2)"""
    if n < 1:
        raise ParameterError(f"Rank must be at least 1, got {n}")
    ctx = ctx or default_context(form, n)
    blocks = [building_block(n, i, form, rep, ctx) for i in range(1, block_count(n) + 1)]
    logger.debug("built %d %s blocks over %d torus variables", len(blocks), form.value, ctx.size)
    return GroupElement(n, form, rep, ctx, ordered_product(blocks), blocks)


# ============================================================
# COPRODUCT
# ============================================================

def _coproduct_block(n: int, i: int, rep: Generators, ctx: TorusContext, sign: Twist) -> RingMatrix:
    k = root_generators(rep, square_bracket(n, i))
    tw = twist(rep, sign)
    H, Tp, Tm = rep.H[k], tw.Tplus[k], tw.Tminus[k]
    I = RingMatrix.identity(H.ring, H.size)
    q2H = cartan_q_power(H, Fraction(2))
    q_minus_2H = cartan_q_power(H, Fraction(-2))

    if sign is Twist.POSITIVE:
        # Delta(T_+) = T_+ (x) 1 + q^{2H} (x) T_+,  Delta(T_-) = T_- (x) q^{-2H} + 1 (x) T_-
        psi_left, psi_right = kron(Tp, I), kron(q2H, Tp)
        chi_left, chi_right = kron(Tm, q_minus_2H), kron(I, Tm)
    else:
        # Delta(T_+) = T_+ (x) q^{-2H} + 1 (x) T_+,  Delta(T_-) = T_- (x) 1 + q^{2H} (x) T_-
        psi_left, psi_right = kron(Tp, q_minus_2H), kron(I, Tp)
        chi_left, chi_right = kron(Tm, I), kron(q2H, Tm)

    ring = TorusRing(ctx)
    psi_name, phi_name, chi_name = block_variables(MV_NAMES, i)
    psi = TorusElement.variable(ctx, psi_name)
    chi = TorusElement.variable(ctx, chi_name)
    phi_power = torus_half_power(ctx, phi_name)
    terms = 2 * H.size * H.size

    def qexp(T: RingMatrix, coefficient: TorusElement, base: QBase) -> RingMatrix:
        return q_exp_matrix(T.lift(ring).left_scale(coefficient), base, max_terms=terms)

    return (
        qexp(psi_left, psi, QBase.Q)
        @ qexp(psi_right, psi, QBase.Q)
        @ element_power_diagonal(ring, kron(H, I), phi_power)
        @ element_power_diagonal(ring, kron(I, H), phi_power)
        @ qexp(chi_left, chi, QBase.INV_Q)
        @ qexp(chi_right, chi, QBase.INV_Q)
    )


def coproduct_group_element(
    n: int, rep: Generators, ctx: Optional[TorusContext] = None, sign: Twist = Twist.POSITIVE,
) -> RingMatrix:
    """Delta(g) as the ordered product of the factorized block coproducts (MV form)."""
    ctx = ctx or mv_context(n)
    return ordered_product([_coproduct_block(n, i, rep, ctx, sign) for i in range(1, block_count(n) + 1)])


def mv_group_element_twisted(n: int, rep: Generators, ctx: TorusContext, sign: Twist) -> RingMatrix:
    """MV group element with an explicit twist; the negative one only serves as a control."""
    if sign is Twist.POSITIVE:
        return group_element(n, BlockForm.MV, rep, ctx).matrix
    tw = twist(rep, sign)
    ring = TorusRing(ctx)
    blocks = []
    for i in range(1, block_count(n) + 1):
        k = root_generators(rep, square_bracket(n, i))
        psi, phi, chi = block_variables(MV_NAMES, i)
        blocks.append(mv_form(
            ring, rep.H[k], tw.Tplus[k], tw.Tminus[k],
            TorusElement.variable(ctx, psi), torus_half_power(ctx, phi), TorusElement.variable(ctx, chi),
        ))
    return ordered_product(blocks)


# ============================================================
# SYMPLECTIC LEAF
# ============================================================

def symplectic_leaf(n: int, rep: Optional[Generators] = None) -> RingMatrix:
    """prod_{i=1..n} w_i^{H_i} e_q(T_{+i}) x_i^{H_i} e_{1/q}(T_{-i}) over the w, x subtorus."""
    rep = rep or fundamental_rep(n + 1)
    ctx = leaf_context(n)
    ring = TorusRing(ctx)
    tw = twist(rep, Twist.POSITIVE)
    blocks = []
    for i in range(1, n + 1):
        k = root_generators(rep, square_bracket(n, i))
        w, x, _ = block_variables(FG_NAMES, i)
        blocks.append(fg_form(
            ring, rep.H[k], tw.Tplus[k], tw.Tminus[k],
            torus_half_power(ctx, w), torus_half_power(ctx, x),
        ))
    return ordered_product(blocks)


# ============================================================
# CLASSICAL LIMIT
# ============================================================

def classical_limit(M: RingMatrix) -> sympy.Matrix:
    """Entrywise v = 1 limit with commuting sympy symbols."""
    return sympy.Matrix([[x.to_classical() for x in row] for row in M.rows])


def gauss_leaf_classical(n: int) -> sympy.Matrix:
    """prod_i diag(w_i^h) (1 + E_{i,i+1}) diag(x_i^h) (1 + E_{i+1,i}) in the fundamental representation."""
    N = n + 1
    result = sympy.eye(N)
    for i in range(1, n + 1):
        w, x = sympy.Symbol(f"w_{i}"), sympy.Symbol(f"x_{i}")
        h = [sympy.Rational(1, 2) if a == i - 1 else (sympy.Rational(-1, 2) if a == i else 0) for a in range(N)]
        E = sympy.eye(N)
        E[i - 1, i] = 1
        F = sympy.eye(N)
        F[i, i - 1] = 1
        result = result * sympy.diag(*[w ** e for e in h]) * E * sympy.diag(*[x ** e for e in h]) * F
    return result.applyfunc(sympy.expand)
