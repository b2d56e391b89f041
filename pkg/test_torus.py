from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.torus import (
    TorusContext, TorusElement, identity_images, torus_specialize, torus_substitute,
)
from core.errors import (
    ContextMismatch, NoExactRoot, NonIntegralPhase, NotInvertible, SkewIncompatible,
)
from core.qscalar import Q, QScalar
from group.contexts import fg_context, mv_context, mv_to_fg_images

NAMES = ("a", "b", "c", "d")


@st.composite
def contexts(draw, even=True):
    n = draw(st.integers(min_value=2, max_value=4))
    entries = st.sampled_from((-4, -2, 0, 2, 4) if even else (-2, -1, 0, 1, 2))
    relations = {}
    for i in range(n):
        for j in range(i + 1, n):
            relations[(NAMES[i], NAMES[j])] = draw(entries)
    return TorusContext.from_relations(NAMES[:n], relations)


@st.composite
def elements(draw, ctx, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(min_value=1, max_value=max_terms))):
        e = tuple(draw(st.integers(min_value=-3, max_value=3)) for _ in ctx.variables)
        terms[e] = QScalar.v_power(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    return TorusElement(ctx, terms)


def rewrite_word(ctx, word):
    """Adjacent-swap normal ordering of a word of (variable, integer power) letters."""
    letters = list(word)
    q_exponent = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(letters) - 1):
            (b, y), (a, x) = letters[k], letters[k + 1]
            if ctx.index(b) > ctx.index(a):
                # b^y a^x = q^{omega_ba y x} a^x b^y
                q_exponent += ctx.relation(b, a) * y * x
                letters[k], letters[k + 1] = (a, x), (b, y)
                changed = True
    powers = {}
    for name, p in letters:
        powers[name] = powers.get(name, 0) + p
    return TorusElement.monomial(ctx, powers, QScalar.q_power(q_exponent))


# ---- normal ordering ----

@settings(max_examples=150, deadline=None)
@given(st.data())
def test_product_matches_rewriting_oracle(data):
    ctx = data.draw(contexts(even=False))
    word = data.draw(st.lists(
        st.tuples(st.sampled_from(ctx.variables), st.integers(min_value=-2, max_value=2).filter(bool)),
        min_size=1, max_size=8,
    ))
    product = TorusElement.one(ctx)
    for name, p in word:
        product = product * TorusElement.variable(ctx, name, p)
    assert product == rewrite_word(ctx, word)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_multiplication_is_associative(data):
    ctx = data.draw(contexts())
    A, B, C = (data.draw(elements(ctx)) for _ in range(3))
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_monomial_inverse_power_and_root(data):
    ctx = data.draw(contexts())
    e = tuple(data.draw(st.integers(-2, 2)) for _ in ctx.variables)
    r = TorusElement.from_exponents(ctx, e, QScalar.v_power(data.draw(st.integers(-2, 2)), 2))
    m = r * r
    assert m * m.inverse() == 1
    assert m.inverse() * m == 1
    assert m ** 3 == m * m * m
    assert m ** -2 == m.inverse() * m.inverse()
    assert m.sqrt() == r


def test_defining_relations():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    x, y = TorusElement.variable(ctx, "x"), TorusElement.variable(ctx, "y")
    assert x * y == (y * x).scale(Q * Q)
    assert y * x == TorusElement.monomial(ctx, {"x": 1, "y": 1}, QScalar.q_power(-2))


def test_half_powers_and_phase_integrality():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    half = TorusElement.variable(ctx, "y", Fraction(1, 2)) * TorusElement.variable(ctx, "x", Fraction(1, 2))
    assert half == TorusElement.monomial(ctx, {"x": Fraction(1, 2), "y": Fraction(1, 2)}, QScalar.v_power(-1))

    odd = TorusContext.from_relations(("x", "y"), {("x", "y"): 1})
    with pytest.raises(NonIntegralPhase):
        TorusElement.variable(odd, "y", Fraction(1, 2)) * TorusElement.variable(odd, "x", Fraction(1, 2))


def test_sums_have_no_inverse():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    with pytest.raises(NotInvertible):
        (1 + TorusElement.variable(ctx, "x")).inverse()


def test_root_needs_even_exponents():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    with pytest.raises(NoExactRoot):
        TorusElement.variable(ctx, "x", Fraction(1, 2)).sqrt()
    with pytest.raises(NoExactRoot):
        TorusElement.variable(ctx, "x", 2).scale(3).sqrt()


def test_contexts_do_not_mix():
    a = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    b = TorusContext.from_relations(("x", "y"), {("x", "y"): -2})
    with pytest.raises(ContextMismatch):
        TorusElement.variable(a, "x") + TorusElement.variable(b, "x")


def test_antisymmetry_is_enforced():
    with pytest.raises(ValueError):
        TorusContext(("x", "y"), ((0, 2), (2, 0)))


def test_text_is_canonical():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    x, y = TorusElement.variable(ctx, "x"), TorusElement.variable(ctx, "y")
    assert (x + y * x).to_text() == (y * x + x).to_text()


# ---- substitution and specialization ----

def test_identity_substitution():
    ctx = mv_context(1)
    element = TorusElement.variable(ctx, "psi_1") * TorusElement.variable(ctx, "Phi_1", Fraction(1, 2))
    assert torus_substitute(ctx, ctx, identity_images(ctx), element) == element


def test_mv_to_fg_images_are_skew_compatible():
    mv, fg = mv_context(2), fg_context(2)
    images = mv_to_fg_images(2, mv, fg)
    phi = TorusElement.variable(mv, "Phi_1")
    psi = TorusElement.variable(mv, "psi_1")
    image = torus_substitute(mv, fg, images, phi * psi)
    w, x, y = (TorusElement.variable(fg, f"{v}_1") for v in ("w", "x", "y"))
    assert image == w * x * y * w


def test_incompatible_images_are_rejected():
    src = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    dst = TorusContext.from_relations(("u", "w"), {("u", "w"): 4})
    images = {"x": TorusElement.variable(dst, "u"), "y": TorusElement.variable(dst, "w")}
    with pytest.raises(SkewIncompatible):
        torus_substitute(src, dst, images, TorusElement.variable(src, "x"))


def test_specialization_drops_variables():
    src = TorusContext.from_relations(("x", "y", "z"), {("x", "y"): 2})
    dst = src.restrict(("x", "y"))
    A = TorusElement.monomial(src, {"x": 1, "y": 1, "z": 2}, 3) + TorusElement.variable(src, "x")
    expected = TorusElement.monomial(dst, {"x": 1, "y": 1}, 3) + TorusElement.variable(dst, "x")
    assert torus_specialize(src, dst, A, ["z"]) == expected


def test_classical_limit():
    ctx = TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
    x, y = TorusElement.variable(ctx, "x"), TorusElement.variable(ctx, "y")
    assert (x * y - y * x).to_classical() == 0


@st.composite
def integral_elements(draw, ctx, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(min_value=1, max_value=max_terms))):
        e = tuple(2 * draw(st.integers(min_value=-2, max_value=2)) for _ in ctx.variables)
        terms[e] = QScalar.v_power(draw(st.integers(-3, 3)), draw(st.sampled_from((-2, -1, 1, 2))))
    return TorusElement(ctx, terms)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_substitution_is_a_ring_homomorphism(data):
    n = data.draw(st.sampled_from((1, 2)))
    mv, fg = mv_context(n), fg_context(n)
    images = mv_to_fg_images(n, mv, fg)
    A, B = data.draw(integral_elements(mv)), data.draw(integral_elements(mv))

    def sub(X):
        return torus_substitute(mv, fg, images, X)

    assert sub(A * B) == sub(A) * sub(B)
    assert sub(A + B) == sub(A) + sub(B)
    assert sub(TorusElement.one(mv)) == TorusElement.one(fg)
