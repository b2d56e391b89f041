import pytest
import sympy

from core.errors import IndexOutOfRange, ParameterError
from group.blocks import BlockForm, building_block
from group.contexts import fg_context, mv_context
from group.element import classical_limit, gauss_leaf_classical, group_element, symplectic_leaf
from group.seed import block_count, cluster_seed, square_bracket, word_D, word_text
from representations.generators import fundamental_rep, symmetric_rep_sl2
from verification.defining import verify_alt_mv_fg, verify_leaf, verify_mv_fg


# ---- seed combinatorics ----

@pytest.mark.parametrize("n,i,expected", [
    (1, 1, 1),
    (2, 1, 1), (2, 2, 2), (2, 3, 1),
    (3, 3, 3), (3, 4, 1), (3, 5, 2), (3, 6, 1),
    (4, 10, 1), (4, 5, 1), (4, 7, 3),
])
def test_square_bracket(n, i, expected):
    assert square_bracket(n, i) == expected


def test_square_bracket_range():
    with pytest.raises(IndexOutOfRange):
        square_bracket(3, 7)
    with pytest.raises(IndexOutOfRange):
        square_bracket(3, 0)
    with pytest.raises(ParameterError):
        square_bracket(0, 1)


def test_word_D():
    assert word_D(1) == [1, -1]
    assert word_D(2) == [1, -1, 2, -2, 1, -1]
    assert len(word_D(4)) == 2 * block_count(4)
    assert word_text([1, -1]) == "1 1̄"


def test_cluster_seed_shape():
    seed = cluster_seed(2)
    assert len(seed.variables) == 9
    assert seed.variables[:3] == ["w_1", "x_1", "y_1"]
    assert seed.d == [1] * 9
    size = len(seed.variables)
    for a in range(size):
        for b in range(size):
            assert seed.epsilon[a][b] == -seed.epsilon[b][a]
    x1, y1, w1, w2 = (seed.variables.index(v) for v in ("x_1", "y_1", "w_1", "w_2"))
    assert seed.epsilon[x1][y1] == 1
    assert seed.epsilon[x1][w1] == 1
    assert seed.epsilon[x1][w2] == 0
    assert seed.omega()[x1][y1] == 2


def test_seed_to_dict():
    data = cluster_seed(1).to_dict()
    assert data["n"] == 1
    assert data["D"] == [1, -1]
    assert data["variables"] == ["w_1", "x_1", "y_1"]


# ---- blocks and products ----

@pytest.mark.parametrize("form", list(BlockForm))
def test_group_element_shape(form):
    g = group_element(2, form, fundamental_rep(3))
    assert g.dim == 3
    assert len(g.blocks) == block_count(2)


def test_block_form_parse():
    assert BlockForm.parse("fg") is BlockForm.FG
    assert BlockForm.parse("MV_PRIME") is BlockForm.MV_PRIME
    with pytest.raises(ParameterError):
        BlockForm.parse("gauss")


def test_block_needs_its_simple_root():
    # block 2 of n = 2 uses root 2, which sl_2 lacks
    with pytest.raises(ParameterError):
        building_block(2, 2, BlockForm.FG, fundamental_rep(2), fg_context(2))


def test_group_element_rank_checked():
    with pytest.raises(ParameterError):
        group_element(0, BlockForm.MV, fundamental_rep(2), mv_context(1))


@pytest.mark.parametrize("form", list(BlockForm))
def test_classical_determinant_is_one(form):
    g = group_element(1, form, fundamental_rep(2))
    assert sympy.simplify(g.classical().det()) == 1


def test_mv_and_fg_agree_after_substitution():
    for n in (1, 2):
        report = verify_mv_fg(n)
        assert report.passed, report.to_dict()
    assert verify_mv_fg(1, symmetric_rep_sl2(3)).passed


def test_alternative_forms_agree():
    report = verify_alt_mv_fg(fundamental_rep(2), 1)
    assert report.passed, report.to_dict()


# ---- symplectic leaf ----

def test_leaf_matches_gauss_decomposition():
    for n in (1, 2):
        assert verify_leaf(n).passed


def test_leaf_classical_limit():
    leaf = symplectic_leaf(1)
    difference = classical_limit(leaf) - gauss_leaf_classical(1)
    assert difference.applyfunc(sympy.simplify) == sympy.zeros(2, 2)
