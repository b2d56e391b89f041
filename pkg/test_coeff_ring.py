import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from core.errors import PoleError
from core.laurent import LaurentPoly
from core.qcombinatorics import (
    QBase, q_binomial, q_binomial_factorial_formula, q_factorial, q_int, q_pochhammer_difference,
)
from core.qscalar import ONE, Q, V, ZERO, QScalar, evaluate

polys = st.dictionaries(
    st.integers(min_value=-4, max_value=4), st.integers(min_value=-3, max_value=3), max_size=4,
).map(LaurentPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
scalars = st.builds(QScalar, polys, nonzero_polys)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())


# ---- field axioms ----

@settings(max_examples=1000, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=200, deadline=None)
@given(nonzero_scalars)
def test_inverse_is_two_sided(a):
    assert a * a.inverse() == ONE
    assert a.inverse() * a == ONE
    assert (1 / a) == a.inverse()


@settings(max_examples=100, deadline=None)
@given(scalars, nonzero_scalars)
def test_division_then_multiplication_round_trips(a, b):
    assert (a / b) * b == a


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_canonical_form_is_structural(p, r):
    assume(not (p * r).is_zero())
    assert QScalar(p * r, r) == QScalar(p)
    assert hash(QScalar(p * r, r)) == hash(QScalar(p))


# ---- evaluation ----

def test_classical_limit_of_q_integers():
    for n in range(0, 12):
        assert q_int(n).evaluate(1) == n


def test_q_integer_closed_form():
    for n in range(1, 10):
        closed = (QScalar.q_power(n) - QScalar.q_power(-n)) / (Q - QScalar.q_power(-1))
        assert q_int(n) == closed


def test_pole_at_v_equal_one():
    s = ONE / (Q - 1)
    with pytest.raises(PoleError):
        s.evaluate(1)
    assert s.evaluate(2) == Fraction(1, 3)


def test_float_evaluation():
    assert q_int(2).evaluate(2.0) == pytest.approx(4.25)


def test_q_power_needs_half_integers():
    assert QScalar.q_power(Fraction(1, 2)) == V
    with pytest.raises(ValueError):
        QScalar.q_power(Fraction(1, 4))


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_v_monomial():
    assert QScalar.v_power(3, 5).v_monomial() == (5, 3)
    assert (ONE + V).v_monomial() is None


# ---- q-combinatorics ----

def test_q_binomial_pascal_matches_factorial_formula():
    for n in range(0, 11):
        for k in range(0, n + 1):
            assert q_binomial(n, k) == q_binomial_factorial_formula(n, k)


def test_q_binomial_classical_limit():
    for n in range(0, 11):
        for k in range(0, n + 1):
            assert q_binomial(n, k).evaluate(1) == math.comb(n, k)


def test_q_binomial_outside_range_is_zero():
    assert q_binomial(3, 4) == ZERO
    assert q_binomial(3, -1) == ZERO
    assert q_binomial(-1, 0) == ZERO


def test_q_binomial_is_symmetric_under_v_inversion():
    # symmetric q-analogs are invariant under q -> 1/q
    b = q_binomial(6, 3)
    assert b.evaluate(Fraction(2)) == b.evaluate(Fraction(1, 2))


def test_pochhammer_difference():
    for s in range(0, 6):
        expected = (Q - QScalar.q_power(-1)) ** s * q_factorial(s)
        assert q_pochhammer_difference(s) == expected


def test_qexp_coefficients():
    assert QBase.Q.coefficient(0) == ONE
    assert QBase.Q.coefficient(1) == ONE
    assert QBase.Q.coefficient(2) == QScalar.q_power(-1) / q_int(2)
    assert QBase.INV_Q.coefficient(2) == Q / q_int(2)
    assert QBase.parse("1/q") is QBase.INV_Q
    with pytest.raises(ValueError):
        QBase.parse("p")


@given(st.integers(min_value=-40, max_value=40))
def test_q_int_is_odd(n):
    assert q_int(-n) == -q_int(n)


pairs_up_to_12 = st.integers(min_value=0, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=n))
)


@given(pairs_up_to_12)
def test_q_binomial_symmetry(nk):
    n, k = nk
    assert q_binomial(n, k) == q_binomial(n, n - k)


@given(pairs_up_to_12.filter(lambda nk: nk[0] >= 1))
def test_q_binomial_both_pascal_rules(nk):
    n, k = nk
    low, high = q_binomial(n - 1, k), q_binomial(n - 1, k - 1)
    assert q_binomial(n, k) == QScalar.q_power(k) * low + QScalar.q_power(k - n) * high
    assert q_binomial(n, k) == QScalar.q_power(-k) * low + QScalar.q_power(n - k) * high


# ---- evaluation as a homomorphism ----

points = st.sampled_from([Fraction(2), Fraction(3), Fraction(-2), Fraction(1, 2), Fraction(-3, 2), Fraction(5, 3)])


def evaluate_or_skip(s, v0):
    try:
        return evaluate(s, v0)
    except PoleError:
        assume(False)


@settings(max_examples=300, deadline=None)
@given(scalars, scalars, points)
def test_evaluation_is_a_ring_homomorphism(a, b, v0):
    ea, eb = evaluate_or_skip(a, v0), evaluate_or_skip(b, v0)
    assert evaluate(a + b, v0) == ea + eb
    assert evaluate(a * b, v0) == ea * eb
    assert evaluate(-a, v0) == -ea
    assert evaluate(ONE, v0) == 1
