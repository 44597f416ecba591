from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcitor.ring import (
    GF, QQ, Elimination, FieldError, GrevLex, Lex, ParseError, PolyRing, RingMismatchError,
    format_polynomial, leading_term, parse_polynomial, poly_arith,
)
from strategies import RINGS, polynomials


def test_parse_three_terms(R2):
    f = R2.parse("x^2*y - 3*y + 1")
    assert len(f) == 3
    assert f.terms[(2, 1)] == 1 and f.terms[(0, 1)] == -3 and f.terms[(0, 0)] == 1


def test_parse_cancellation(R2):
    f = parse_polynomial("x - x", R2)
    assert f.is_zero() and f.terms == {}


def test_parse_reduces_fractions():
    R = PolyRing(QQ, ["x"])
    f = R.parse("2/4*x")
    c = f.terms[(1,)]
    assert c == Fraction(1, 2) and c.denominator == 2


def test_parse_whitespace_and_unary_minus(R2):
    assert R2.parse(" - x ^ 2 +  y") == -R2.gen("x") ** 2 + R2.gen("y")


@pytest.mark.parametrize("text, pos", [("x +", 3), ("x ** y", 3), ("x + $", 4), ("2/0*x", 2)])
def test_parse_errors_carry_position(R2, text, pos):
    with pytest.raises(ParseError) as err:
        R2.parse(text)
    assert err.value.position == pos


def test_unknown_variable(R2):
    with pytest.raises(ParseError, match="unknown variable 'q'"):
        R2.parse("x + q")


def test_coefficient_not_in_prime_field():
    R = PolyRing(GF(5), ["x"])
    with pytest.raises(FieldError):
        R.parse("1/5*x")
    assert R.parse("1/2*x").terms[(1,)] == 3  # 2 * 3 = 6 = 1 mod 5


def test_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        GF(6)


def test_leading_terms(R2, R2lex):
    f = R2.parse("x + y^2")
    assert leading_term(f, GrevLex()) == ((0, 2), 1)
    assert leading_term(f, Lex()) == ((1, 0), 1)
    assert leading_term(R2lex.parse("x + y^2")) == ((1, 0), 1)
    assert leading_term(R2(5)) == ((0, 0), 5)
    with pytest.raises(ValueError):
        leading_term(R2.zero)


def test_elimination_order_puts_first_block_first():
    R = PolyRing(QQ, ["t", "x", "y"], Elimination(1))
    f = R.parse("x^5 + t")
    assert leading_term(f) == ((1, 0, 0), 1)


def test_arith_examples(R2, F2):
    x, y = R2.gens()
    assert poly_arith(x + y, x - y, "mul") == x**2 - y**2
    assert poly_arith(x, R2.zero, "add") == x
    a, b = F2.gens()
    assert (a + b) ** 2 == a**2 + b**2


def test_ring_mismatch(R2, R3):
    with pytest.raises(RingMismatchError):
        poly_arith(R2.gen(0), R3.gen(0), "add")


def test_equal_polynomials_share_term_order(R2):
    x, y = R2.gens()
    f = (x + y) * (x - y) + y**2
    g = x * x
    assert list(f.terms) == list(g.terms) and hash(f) == hash(g)


ring_and_triple = st.sampled_from([1, 2, 3, 4]).flatmap(
    lambda n: st.tuples(*(polynomials(RINGS[n], max_deg=3) for _ in range(3))))


@given(ring_and_triple)
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == f.ring.zero


@given(st.sampled_from([1, 2, 3]).flatmap(
    lambda n: st.tuples(polynomials(RINGS[n], max_deg=3), polynomials(RINGS[n], max_deg=3))),
    st.sampled_from([Lex(), GrevLex()]))
def test_leading_term_is_multiplicative(fg, order):
    f, g = fg
    if f.is_zero() or g.is_zero():
        return
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    m, c = leading_term(f * g, order)
    assert m == tuple(a + b for a, b in zip(mf, mg)) and c == cf * cg


@given(st.data())
def test_monomial_orders_are_multiplicative(data):
    n = data.draw(st.integers(1, 4))
    exps = st.lists(st.integers(0, 4), min_size=n, max_size=n).map(tuple)
    a, b, c = data.draw(exps), data.draw(exps), data.draw(exps)
    for order in (Lex(), GrevLex(), Elimination(max(1, n // 2))):
        ka, kb = order.key(a), order.key(b)
        if ka < kb:
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            assert order.key(ac) < order.key(bc)
        assert order.key((0,) * n) <= ka


@given(st.sampled_from([1, 2, 3, 4]).flatmap(lambda n: polynomials(RINGS[n], max_deg=6, max_terms=8)))
def test_print_parse_roundtrip(f):
    assert parse_polynomial(format_polynomial(f), f.ring) == f


def test_print_parse_roundtrip_200_seeded():
    import random
    rng = random.Random(7)
    for _ in range(200):
        ring = RINGS[rng.randint(1, 4)]
        terms = {}
        for _ in range(rng.randint(0, 6)):
            e = [0] * ring.nvars
            for _ in range(rng.randint(0, 6)):
                e[rng.randrange(ring.nvars)] += 1
            terms[tuple(e)] = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        f = ring.from_terms(terms)
        assert ring.parse(str(f)) == f


def test_prime_field_roundtrip():
    R = PolyRing(GF(7), ["x", "y"])
    f = R.parse("3*x^2 - y + 6")
    assert R.parse(str(f)) == f
    assert f.terms[(0, 1)] == 6
