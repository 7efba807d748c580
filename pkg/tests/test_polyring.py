from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvgb.exactalg import eps
from mvgb.polyring import (
    Polynomial, Ring, WeightOrder, canonical_string, compare,
    format_polynomial, leading_term, m_from_pairs, m_mul, m_one, multidegree,
    block_order, parse_monomial, parse_polynomial,
)

R3 = Ring(3)


def mono(ring, text):
    return parse_monomial(ring, text)


@st.composite
def monomials(draw, ring=R3, max_exp=3):
    pairs = draw(st.lists(
        st.tuples(st.integers(0, ring.nvars - 1), st.integers(1, max_exp)),
        max_size=5))
    return m_from_pairs(pairs)


def test_multidegree_examples():
    r2 = Ring(2)
    assert multidegree(r2, mono(r2, "x1*y2")) == (1, 1)
    r4 = Ring(4)
    assert multidegree(r4, mono(r4, "y1*y2*y3*y4")) == (1, 1, 1, 1)
    assert multidegree(R3, mono(R3, "x1^2*z1*y3")) == (3, 0, 1)


def test_paper_lex_block_order():
    r2 = Ring(2)
    o = block_order(r2)
    assert compare(o, mono(r2, "x1*x2"), mono(r2, "y1*y2")) == 1
    m = mono(r2, "x1*y2")
    assert compare(o, m, m) == 0


def test_weight_then_lex_tiebreak():
    weights = [0] * R3.nvars
    weights[R3.var("x", 1)] = 1
    o = WeightOrder(R3, weights)
    assert compare(o, mono(R3, "x1^2"), mono(R3, "x1*y1")) == 1
    # equal weight, broken by the declared lex order
    assert compare(o, mono(R3, "x1*y1"), mono(R3, "x1*z1")) == 1


@settings(max_examples=200)
@given(monomials(), monomials(), monomials())
def test_order_is_total_and_multiplicative(a, b, c):
    o = block_order(R3)
    ka, kb = o.key(a), o.key(b)
    assert (ka == kb) == (a == b)
    if ka < kb:
        assert o.key(m_mul(a, c)) < o.key(m_mul(b, c))
    # 1 is minimal among monomials
    assert o.key(m_one) <= ka


@settings(max_examples=60)
@given(monomials(max_exp=2), monomials(max_exp=2))
def test_multidegree_additive(a, b):
    da = multidegree(R3, a)
    db = multidegree(R3, b)
    assert multidegree(R3, m_mul(a, b)) == tuple(x + y for x, y in zip(da, db))


def test_ring_arithmetic_axioms():
    p = parse_polynomial(R3, "x1*y2 - x2*y1")
    q = parse_polynomial(R3, "z1*y3 + 2*x3")
    r = parse_polynomial(R3, "x1 - 1/2*z3")
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial.zero(R3)


def test_homogeneous_product_multidegree():
    p = parse_polynomial(R3, "x1*y2 - x2*y1")
    q = parse_polynomial(R3, "x3*z1 - z3*x1")
    assert p.multidegree() == (1, 1, 0)
    assert (p * q).multidegree() == (2, 1, 1)


def test_leading_term_examples():
    o = block_order(R3)
    # single term polynomial is its own leading term
    p = parse_polynomial(R3, "3*x2*z3")
    assert leading_term(o, p) == (Fraction(3), mono(R3, "x2*z3"))
    # y block precedes z block
    q = parse_polynomial(R3, "z1*y2 - y1*z2")
    assert leading_term(o, q) == (Fraction(-1), mono(R3, "y1*z2"))
    with pytest.raises(ValueError):
        leading_term(o, Polynomial.zero(R3))


def test_extended_ring_w_block():
    r = Ring(2, extended=True)
    assert r.nvars == 8
    assert r.name(0) == "w1"
    assert multidegree(r, parse_monomial(r, "w1*x2")) == (1, 1)
    with pytest.raises(ValueError):
        R3.var("w", 1)


@settings(max_examples=100)
@given(st.lists(st.tuples(monomials(max_exp=4),
                          st.fractions(min_value=-5, max_value=5)),
                min_size=1, max_size=6))
def test_text_roundtrip(items):
    p = Polynomial(R3, {})
    for m, c in items:
        p = p + Polynomial.monomial(R3, m, c)
    s = format_polynomial(p)
    assert parse_polynomial(R3, s) == p


def test_parse_specific():
    p = parse_polynomial(R3, "x1*y2 - x2*y1")
    assert p.terms == {mono(R3, "x1*y2"): Fraction(1),
                       mono(R3, "y1*x2"): Fraction(-1)}
    assert parse_polynomial(R3, "2/3*x1^2 + 1") == \
        Polynomial(R3, {mono(R3, "x1^2"): Fraction(2, 3), m_one: Fraction(1)})


def test_canonical_string_normalizes_sign_and_content():
    p = parse_polynomial(R3, "-2/3*x1*y2 + 2*x2*y1")
    assert canonical_string(p) == "x1*y2 - 3*x2*y1"


def test_eps_coefficients():
    p = Polynomial.monomial(R3, mono(R3, "x1*y2"), eps(1)) \
        - Polynomial.monomial(R3, mono(R3, "x2*y1"), eps(2))
    assert p.domain() == "Q(e)"
    lc, lm = p.leading_term(block_order(R3))
    assert lm == mono(R3, "x1*y2") and lc == eps(1)
    q = p * eps(-1)
    assert q.coefficient(mono(R3, "x2*y1")) == -eps(1)


def test_mixed_ring_rejected():
    r2 = Ring(2)
    with pytest.raises(ValueError):
        parse_polynomial(R3, "x1") * parse_polynomial(r2, "x1")
