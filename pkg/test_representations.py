from fractions import Fraction

import pytest

from algebra.rings import TorusRing
from algebra.torus import TorusContext, TorusElement
from core.errors import NonHalfIntegerEntry, NotNilpotent, ParameterError, RelationCheckFailed
from core.qcombinatorics import QBase, q_int
from core.qscalar import QScalar
from group.blocks import torus_half_power
from group.contexts import fg_context
from representations.generators import (
    Generators, Twist, cartan_diagonal, check_relations, fundamental_rep, parse_rep,
    relation_mismatches, rep_dimension, symmetric_rep_sl2, truncated_lowest_weight_rep, twist,
)
from representations.matrix import RingMatrix, kron
from representations.qexp import (
    ClosedFormKind, diagonal_power, element_power_diagonal, q_exp_matrix, qexp_matrix_direct,
    qexp_matrix_elements_closed_form,
)
from verification.closed_forms import verify_qexp_closed_forms
from verification.defining import verify_relations


# ---- generators and relations ----

@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_fundamental_relations(N):
    gens = fundamental_rep(N)
    assert gens.dim == N
    assert gens.rank == N - 1
    assert relation_mismatches(gens.H, gens.Tplus, gens.Tminus, gens.cartan) == []


@pytest.mark.parametrize("k", range(1, 21))
def test_symmetric_relations(k):
    gens = symmetric_rep_sl2(k)
    assert gens.dim == k + 1
    assert gens.cartan_entries(0)[0] == Fraction(k, 2)


@pytest.mark.parametrize("sign", list(Twist))
def test_twisted_generators_keep_the_relations(sign):
    for gens in (fundamental_rep(3), symmetric_rep_sl2(4)):
        tw = twist(gens, sign)
        assert relation_mismatches(tw.H, tw.Tplus, tw.Tminus, gens.cartan) == []


def test_truncated_rep_holds_on_leading_block_only():
    gens = truncated_lowest_weight_rep(6)
    assert gens.exact_size == 5
    assert relation_mismatches(gens.H, gens.Tplus, gens.Tminus, gens.cartan, gens.exact_size) == []
    bad = relation_mismatches(gens.H, gens.Tplus, gens.Tminus, gens.cartan)
    assert bad
    assert bad[0][1] == "entry (6,6)"


def test_broken_generators_are_reported():
    gens = symmetric_rep_sl2(2)
    broken = Generators(
        "broken", gens.dim, gens.H, [gens.Tplus[0].scale(QScalar.coerce(2))], gens.Tminus, gens.cartan,
    )
    with pytest.raises(RelationCheckFailed):
        check_relations(broken)


def test_verify_relations_report():
    assert verify_relations(fundamental_rep(3)).passed
    report = verify_relations(truncated_lowest_weight_rep(5))
    assert report.passed
    assert report.notes


def test_cartan_diagonal_needs_half_integers():
    H = RingMatrix.from_scalars([[Fraction(1, 3), 0], [0, 0]])
    with pytest.raises(NonHalfIntegerEntry):
        cartan_diagonal(H)
    with pytest.raises(NonHalfIntegerEntry):
        cartan_diagonal(RingMatrix.from_scalars([[0, 1], [0, 0]]))


def test_symmetric_rep_entries():
    gens = symmetric_rep_sl2(3)
    assert gens.Tplus[0].entry(1, 2) == q_int(2)
    assert gens.Tminus[0].entry(1, 0) == q_int(3)
    classical = gens.classical()
    assert classical["H"][0][0][0] == Fraction(3, 2)


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_symmetric_rep_classical_limit(k):
    classical = symmetric_rep_sl2(k).classical()
    H, E, F = classical["H"][0], classical["Tplus"][0], classical["Tminus"][0]
    for i in range(k + 1):
        for j in range(k + 1):
            assert H[i][j] == (Fraction(k, 2) - j if i == j else 0)
            assert E[i][j] == (j if i == j - 1 else 0)
            assert F[i][j] == (k - j if i == j + 1 else 0)
    # [E, F] = 2H at q = 1
    for j in range(k + 1):
        ef = (E[j][j + 1] * F[j + 1][j]) if j < k else 0
        fe = (F[j][j - 1] * E[j - 1][j]) if j > 0 else 0
        assert ef - fe == 2 * H[j][j]


# ---- parsing ----

def test_parse_rep():
    assert parse_rep("fund", 2).label == "fund:3"
    assert parse_rep("sym:3").dim == 4
    assert parse_rep("trunc:5").exact_size == 4
    assert rep_dimension("fund", 3) == 4
    assert rep_dimension("sym:7") == 8


@pytest.mark.parametrize("text,n", [("sym:x", 1), ("sym:3", 2), ("trunc:4", 3), ("spin:2", 1), ("sym:0", 1)])
def test_parse_rep_rejects(text, n):
    with pytest.raises(ParameterError):
        parse_rep(text, n)


# ---- matrices ----

def test_kron_keeps_left_factor_on_the_left():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    ring = TorusRing(ctx)
    x, y = TorusElement.variable(ctx, "x"), TorusElement.variable(ctx, "y")
    product = kron(RingMatrix.diagonal(ring, [x, x]), RingMatrix.diagonal(ring, [y]))
    assert product.size == 2
    assert product.entry(0, 0) == x * y
    assert product.entry(0, 0) != y * x


def test_kron_block_structure():
    A = RingMatrix.from_scalars([[1, 2], [0, 1]])
    B = RingMatrix.from_scalars([[0, 1], [1, 0]])
    K = kron(A, B)
    assert K.size == 4
    assert K.entry(0, 3) == QScalar.coerce(2)
    assert K.entry(1, 2) == QScalar.coerce(2)
    assert K.entry(2, 3) == QScalar.coerce(1)
    assert K.entry(0, 0).is_zero()


# ---- q-exponentials of matrices ----

def test_qexp_of_nilpotent_matrix_terminates():
    gens = fundamental_rep(2)
    E = q_exp_matrix(gens.Tplus[0])
    assert E == RingMatrix.identity(E.ring, 2) + gens.Tplus[0]


def test_qexp_of_square_zero_plus_one():
    gens = symmetric_rep_sl2(2)
    E = q_exp_matrix(gens.Tplus[0], QBase.Q)
    # T+^2 (1,3) = [1][2], coefficient q^{-1}/[2]
    assert E.entry(0, 2) == QScalar.q_power(-1)


def test_qexp_needs_nilpotent_matrix():
    with pytest.raises(NotNilpotent):
        q_exp_matrix(RingMatrix.from_scalars([[1, 0], [0, 1]]), max_terms=5)


def test_qexp_inverse_pair_on_matrices():
    T = symmetric_rep_sl2(4).Tplus[0]
    product = q_exp_matrix(T, QBase.Q) @ q_exp_matrix(-T, QBase.INV_Q)
    assert product == RingMatrix.identity(product.ring, 5)


def test_closed_form_kind_parse():
    assert ClosedFormKind.parse("e_q(q^H T+)") is ClosedFormKind.EQ_QH_TPLUS
    assert ClosedFormKind.parse("einv_tminus_qh") is ClosedFormKind.EINV_TMINUS_QH
    with pytest.raises(ValueError):
        ClosedFormKind.parse("e_q(T-)")


def test_closed_form_first_entries():
    closed = qexp_matrix_elements_closed_form(ClosedFormKind.EQ_QH_TPLUS, 3)
    direct, _ = qexp_matrix_direct(ClosedFormKind.EQ_QH_TPLUS, 3)
    assert closed.entry(0, 1) == QScalar.q_power(-1)
    assert direct.entry(0, 1) == closed.entry(0, 1)
    assert closed.entry(1, 0).is_zero()


def test_closed_forms_match_direct_computation():
    report = verify_qexp_closed_forms(M=8, guard=2)
    assert report.passed, report.to_dict()


@pytest.mark.slow
def test_closed_forms_acceptance_size():
    assert verify_qexp_closed_forms(M=30).passed


# ---- diagonal powers and printing ----

def test_diagonal_power_of_a_torus_variable():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    H = symmetric_rep_sl2(2).H[0]
    D = diagonal_power("x", H, ctx)
    assert D.is_diagonal()
    assert D.diagonal_entries() == [
        TorusElement.variable(ctx, "x"), TorusElement.one(ctx), TorusElement.variable(ctx, "x", -1),
    ]


@pytest.mark.parametrize("gens", [fundamental_rep(2), fundamental_rep(3), symmetric_rep_sl2(3)])
def test_diagonal_power_matches_block_half_powers(gens):
    ctx = fg_context(gens.rank)
    var = ctx.variables[0]
    for H in gens.H:
        expected = element_power_diagonal(TorusRing(ctx), H, torus_half_power(ctx, var))
        assert diagonal_power(var, H, ctx) == expected


def test_diagonal_power_of_fundamental_is_half_integral():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    D = diagonal_power("x", fundamental_rep(2).H[0], ctx)
    assert D.entry(0, 0) == TorusElement.variable(ctx, "x", Fraction(1, 2))
    assert D.entry(0, 0) * D.entry(1, 1) == TorusElement.one(ctx)


def test_pretty_aligns_columns():
    text = RingMatrix.from_scalars([[1, 12], [0, 1]]).pretty()
    assert text.splitlines() == ["[ 1  12 ]", "[ 0   1 ]"]
