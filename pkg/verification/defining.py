# verification/defining.py
from fractions import Fraction
from typing import Optional

import sympy

from algebra.rings import TorusRing
from algebra.torus import TorusElement, torus_specialize, torus_substitute
from core.errors import ParameterError
from core.log import get_logger
from group.blocks import BlockForm, building_block
from group.contexts import (
    FG_NAMES, alt_fg_context, alt_mv_context, alt_mv_to_fg_images, block_variables, fg_context, leaf_context,
    mv_context, mv_to_fg_images,
)
from group.element import (
    classical_limit, coproduct_group_element, gauss_leaf_classical, group_element, mv_group_element_twisted,
    ordered_product, symplectic_leaf,
)
from group.seed import block_count
from representations.generators import Generators, Twist, fundamental_rep, relation_mismatches, twist
from representations.matrix import RingMatrix, kron
from verification.compare import compare_matrices, compare_values
from verification.types import Mismatch, Stopwatch, VerificationReport

logger = get_logger("verification.defining")

DEFINING_TAG = "Delta(g) = g (x) g"

# kind -> (omega scale, twist)
CONTROLS = {
    "omega-zero": (Fraction(0), Twist.POSITIVE),
    "omega-half": (Fraction(1, 2), Twist.POSITIVE),
    "swapped-twist": (Fraction(1), Twist.NEGATIVE),
}


def _default_rep(n: int, rep: Optional[Generators]) -> Generators:
    if rep is None:
        return fundamental_rep(n + 1)
    if rep.rank < n:
        raise ParameterError(f"Representation {rep.label} has rank {rep.rank}, rank {n} is needed")
    return rep


def _substitute_matrix(M: RingMatrix, src, dst, images) -> RingMatrix:
    return M.map(lambda x: torus_substitute(src, dst, images, x), TorusRing(dst))


# ============================================================
# DEFINING EQUATION
# ============================================================

def verify_defining_equation(
    n: int = 1, rep: Optional[Generators] = None, omega_scale=1, sign: Twist = Twist.POSITIVE,
    expect_failure: bool = False,
) -> VerificationReport:
    rep = _default_rep(n, rep)
    report = VerificationReport(
        check="defining", eq_tag=DEFINING_TAG,
        params={"n": n, "rep": rep.label, "omega_scale": str(Fraction(omega_scale)), "twist": sign.value},
        expect_failure=expect_failure,
    )
    clock = Stopwatch()
    ctx = mv_context(n, omega_scale)
    logger.info("defining equation: n = %d, %s, %d torus variables", n, rep.label, ctx.size)

    g = mv_group_element_twisted(n, rep, ctx, sign)
    delta = coproduct_group_element(n, rep, ctx, sign)
    compare_matrices(report, delta, kron(g, g), where="Delta(g) against g (x) g")
    report.details["dim"] = delta.size
    clock.stop(report)
    logger.info("defining equation: %s in %d ms", report.status, report.elapsed_ms)
    return report


def verify_defining_control(kind: str, n: int = 1, rep: Optional[Generators] = None) -> VerificationReport:
    """Passes when the broken setup makes the defining equation fail with a concrete entry."""
    if kind not in CONTROLS:
        raise ParameterError(f"Unknown control: {kind}. Known: {', '.join(CONTROLS)}")
    omega_scale, sign = CONTROLS[kind]
    report = VerificationReport(
        check="defining-control", eq_tag=f"{DEFINING_TAG} must fail",
        params={"kind": kind, "n": n},
    )
    clock = Stopwatch()
    inner = verify_defining_equation(n, rep, omega_scale, sign, expect_failure=True)
    report.params["rep"] = inner.params["rep"]
    report.details["inner"] = inner.to_dict(timing=False)
    if inner.passed:
        report.record(Mismatch(location=kind, expected="FAIL", actual="PASS", where="negative control"))
    else:
        report.notes.append(f"{kind}: fails at {inner.mismatch.location} ({inner.mismatch_count} entries)")
    return clock.stop(report)


# ============================================================
# MV AGAINST FG
# ============================================================

def verify_mv_fg(n: int = 1, rep: Optional[Generators] = None) -> VerificationReport:
    """q^{phi_i} = w_i x_i y_i, psi_i = w_i, chi_i = y_i maps the MV element onto the FG element."""
    rep = _default_rep(n, rep)
    report = VerificationReport(
        check="mv-fg", eq_tag="q^phi_i = w_i x_i y_i, psi_i = w_i, chi_i = y_i",
        params={"n": n, "rep": rep.label},
    )
    clock = Stopwatch()
    logger.info("MV to FG: n = %d, %s", n, rep.label)
    mv, fg = mv_context(n), fg_context(n)
    images = mv_to_fg_images(n, mv, fg)

    for i in range(1, block_count(n) + 1):
        w, x, y = (TorusElement.variable(fg, name) for name in block_variables(FG_NAMES, i))
        compare_values(report, w * x * y, y * x * w, f"w_{i} x_{i} y_{i} = y_{i} x_{i} w_{i}")

    mv_g = group_element(n, BlockForm.MV, rep, mv)
    fg_g = group_element(n, BlockForm.FG, rep, fg)
    for i, (mv_block, fg_block) in enumerate(zip(mv_g.blocks, fg_g.blocks), start=1):
        compare_matrices(report, _substitute_matrix(mv_block, mv, fg, images), fg_block, where=f"block {i}")
    compare_matrices(report, _substitute_matrix(mv_g.matrix, mv, fg, images), fg_g.matrix, where="g")
    return clock.stop(report)


def verify_alt_mv_fg(rep: Optional[Generators] = None, n: int = 1) -> VerificationReport:
    """q^beta = a b c, alpha = 1/a, gamma = 1/c maps the MV-prime element onto the FG-prime element."""
    rep = _default_rep(n, rep)
    report = VerificationReport(
        check="alt-mv-fg", eq_tag="q^beta = a b c, alpha = 1/a, gamma = 1/c",
        params={"n": n, "rep": rep.label},
    )
    clock = Stopwatch()
    src, dst = alt_mv_context(n), alt_fg_context(n)
    images = alt_mv_to_fg_images(n, src, dst)
    prime = group_element(n, BlockForm.MV_PRIME, rep, src)
    fg_prime = group_element(n, BlockForm.FG_PRIME, rep, dst)
    for i, (a, b) in enumerate(zip(prime.blocks, fg_prime.blocks), start=1):
        compare_matrices(report, _substitute_matrix(a, src, dst, images), b, where=f"block {i}")
    compare_matrices(report, _substitute_matrix(prime.matrix, src, dst, images), fg_prime.matrix, where="g")
    return clock.stop(report)


# ============================================================
# GENERATOR RELATIONS
# ============================================================

def verify_relations(rep: Generators) -> VerificationReport:
    report = VerificationReport(
        check="relations",
        eq_tag="q^H_i T+-j q^-H_i = q^(+-C_ij/2) T+-j; [T+i, T-j] = delta_ij [2H_i]",
        params={"rep": rep.label},
    )
    clock = Stopwatch()
    variants = [("untwisted", rep.Tplus, rep.Tminus)]
    for sign in Twist:
        tw = twist(rep, sign)
        variants.append((f"{sign.value} twist", tw.Tplus, tw.Tminus))
    for where, Tp, Tm in variants:
        bad = relation_mismatches(rep.H, Tp, Tm, rep.cartan, rep.exact_size)
        if bad:
            relation, location, lhs, rhs = bad[0]
            report.record(Mismatch(location=location, expected=rhs, actual=lhs, where=f"{where}: {relation}"), len(bad))
    if rep.exact_size is not None:
        report.notes.append(f"relations compared on the leading {rep.exact_size}x{rep.exact_size} block")
    return clock.stop(report)


# ============================================================
# SYMPLECTIC LEAF
# ============================================================

def verify_leaf(n: int = 1) -> VerificationReport:
    report = VerificationReport(
        check="leaf", eq_tag="g_2n = prod_i w_i^H_i e_q(T+i) x_i^H_i e_1/q(T-i)",
        params={"n": n},
    )
    clock = Stopwatch()
    rep = fundamental_rep(n + 1)
    leaf = symplectic_leaf(n, rep)
    fg, dst = fg_context(n), leaf_context(n)
    blocks = [building_block(n, i, BlockForm.FG, rep, fg) for i in range(1, n + 1)]
    drop = [block_variables(FG_NAMES, i)[2] for i in range(1, n + 1)]
    specialized = ordered_product(blocks).map(lambda x: torus_specialize(fg, dst, x, drop), TorusRing(dst))
    compare_matrices(report, leaf, specialized, where="y_i = 1 specialization")

    difference = (classical_limit(leaf) - gauss_leaf_classical(n)).applyfunc(sympy.expand)
    if difference != sympy.zeros(n + 1, n + 1):
        i, j = next((i, j) for i in range(n + 1) for j in range(n + 1) if difference[i, j] != 0)
        report.record(Mismatch(
            location=f"entry ({i + 1},{j + 1})",
            expected=str(gauss_leaf_classical(n)[i, j]),
            actual=str(classical_limit(leaf)[i, j]),
            where="v = 1 against the Gauss factors",
        ))
    return clock.stop(report)
