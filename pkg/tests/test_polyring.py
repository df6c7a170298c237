from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import X2, X3, P, polynomials, small_rationals
from htaction.parsing import parse_polynomial
from htaction.polyring import (
    GREVLEX,
    GRLEX,
    LEX,
    ArityError,
    MonomialOrder,
    Polynomial,
    VariableMismatchError,
    add,
    compare,
    mul,
    substitute,
    translate,
)


def test_rationals_are_canonical():
    p = Polynomial(X2, {(1, 0): Fraction(2, 4)})
    c = p.coefficient((1, 0))
    assert (c.numerator, c.denominator) == (1, 2)
    assert Polynomial(X2, {(1, 0): Fraction(-3, -6)}).coefficient((1, 0)) == Fraction(1, 2)
    assert Polynomial(X2, {(1, 0): 0}).terms == {}


class TestAdd:
    def test_additive_inverse(self):
        assert add(P("x1"), P("-x1")).is_zero()

    def test_disjoint_supports(self):
        assert str(add(P("x1 + 1/2*x1^2"), P("x2"))) == "x1 + x2 + 1/2*x1^2"

    def test_rational_coefficients(self):
        assert add(P("1/2*x1^2"), P("1/3*x1^2")) == P("5/6*x1^2")

    def test_universe_mismatch(self):
        with pytest.raises(VariableMismatchError):
            add(P("x1"), Polynomial.var("x1", X3))


class TestMul:
    def test_unit(self):
        p = P("x1 + 1/2*x2^2 - 3")
        assert mul(p, Polynomial.one(X2)) == p

    def test_square_of_variable(self):
        assert mul(P("x1"), P("x1")) == P("x1^2")

    def test_binomial(self):
        s = P("x1 + x2")
        assert mul(s, s) == P("x1^2 + 2*x1*x2 + x2^2")

    def test_universe_mismatch(self):
        with pytest.raises(VariableMismatchError):
            mul(P("x1"), Polynomial.var("x1", ("x1",)))


class TestSubstitute:
    def test_back_substitution(self):
        f2 = P("x2 + 1/2*x1^2")
        assert substitute(f2, [P("x1"), P("x2 - 1/2*x1^2")]) == P("x2")

    def test_identity(self):
        p = P("x1^2*x2 - 7/3*x2 + 1")
        assert substitute(p, Polynomial.gens(X2)) == p

    def test_swap(self):
        assert substitute(P("x1*x2"), [P("x2"), P("x1")]) == P("x1*x2")

    def test_arity(self):
        with pytest.raises(ArityError):
            substitute(P("x1"), [P("x1")])

    def test_all_scalar_images_evaluate(self):
        assert substitute(P("x1^2 + x2"), [2, Fraction(1, 2)]) == Fraction(9, 2)


class TestTranslate:
    def test_binomial(self):
        p = Polynomial.var("x1", ("x1",))
        c1 = Polynomial.var("c1", ("c1",))
        got = translate(p ** 2, [c1])
        assert got.variables == ("x1", "c1")
        assert got == parse_polynomial("x1^2 + 2*c1*x1 + c1^2", ("x1", "c1"))

    def test_constant_shift(self):
        assert translate(Polynomial.var("x1", ("x1",)), [5]) == parse_polynomial("x1 + 5", ("x1",))

    def test_example_3_2_invariance(self):
        f1, f2 = P("x1"), P("x2 + 1/2*x1^2")
        cs = ("c1", "c2")
        shifted = translate(f2, Polynomial.gens(cs))
        U = X2 + cs
        expected = (f2.embed(U) + Polynomial.var("c1", U) * f1.embed(U)
                    + parse_polynomial("c2 + 1/2*c1^2", U))
        assert shifted == expected

    def test_arity(self):
        with pytest.raises(ArityError):
            translate(P("x1"), [1])


class TestCompare:
    def test_grlex_tiebreak(self):
        assert compare((1, 1), (2, 0), GRLEX) == -1

    @pytest.mark.parametrize("order", [LEX, GRLEX, GREVLEX])
    def test_one_is_minimal(self, order):
        assert compare((0, 0), (1, 0), order) == -1

    def test_graded_degree_first(self):
        assert compare((0, 3), (2, 0), GRLEX) == 1

    def test_grevlex_differs_from_grlex(self):
        # x1*x3^2 vs x2^3: grlex prefers x1*x3^2, grevlex prefers x2^3
        assert compare((1, 0, 2), (0, 3, 0), GRLEX) == 1
        assert compare((1, 0, 2), (0, 3, 0), GREVLEX) == -1

    def test_precedence(self):
        order = MonomialOrder("lex", (1, 0))
        assert compare((1, 0), (0, 1), order) == -1

    def test_length_mismatch(self):
        with pytest.raises(ArityError):
            compare((1,), (1, 0), LEX)


class TestPrinting:
    def test_canonical_order(self):
        p = P("1/6*x1^3 + 1/2*x2^2 + x1*x2 + x2", X2)
        assert str(p) == "x2 + x1*x2 + 1/2*x2^2 + 1/6*x1^3"

    def test_signs_and_constants(self):
        assert str(P("-x1 - 1/2")) == "-1/2 - x1"
        assert str(Polynomial.zero(X2)) == "0"
        assert str(P("-2*x1^2*x2")) == "-2*x1^2*x2"

    @given(polynomials(X3, max_terms=5))
    def test_parse_round_trip(self, p):
        assert parse_polynomial(str(p), X3) == p


class TestEmbed:
    def test_embed_and_restrict(self):
        p = P("x2^2 + 1")
        q = p.embed(("y", "x2", "x1"))
        assert str(q) == "1 + x2^2"
        assert q.restrict(X2) == p

    def test_embed_missing(self):
        with pytest.raises(VariableMismatchError):
            P("x1").embed(("x1",))


# -- ring axioms and substitution properties ---------------------------------

poly2 = polynomials(X2)


@given(poly2, poly2, poly2)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polynomials(X2, max_terms=3), st.lists(polynomials(X2, 3), min_size=2, max_size=2),
       st.lists(polynomials(X2, 3), min_size=2, max_size=2))
@settings(max_examples=40, deadline=None)
def test_substitution_associative(p, F, G):
    lhs = substitute(substitute(p, F), G)
    rhs = substitute(p, [substitute(f, G) for f in F])
    assert lhs == rhs


@given(poly2, st.lists(small_rationals, min_size=2, max_size=2))
def test_substitute_matches_evaluate(p, point):
    assert substitute(p, point) == p.evaluate(point)


def test_translate_by_zero():
    p = P("x1^2*x2 - 3*x2 + 1/2")
    assert translate(p, [0, 0]) == p


@given(polynomials(X2, max_terms=3, max_exp=3))
@settings(max_examples=40, deadline=None)
def test_translate_composes(p):
    S = ("c1", "c2", "d1", "d2")
    c = [Polynomial.var(v, S) for v in ("c1", "c2")]
    d = [Polynomial.var(v, S) for v in ("d1", "d2")]
    first = translate(p, c)
    # the shift variables themselves stay fixed on the second pass
    twice = translate(first, d + [0, 0, 0, 0])
    once = translate(p, [a + b for a, b in zip(c, d)])
    assert twice == once


monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@pytest.mark.parametrize("order", [LEX, GRLEX, GREVLEX, MonomialOrder("grevlex", (2, 0, 1))])
@given(u=monos, v=monos, w=monos)
def test_order_is_total_and_multiplicative(order, u, v, w):
    c = compare(u, v, order)
    assert c == -compare(v, u, order)
    assert (c == 0) == (u == v)
    uw = tuple(a + b for a, b in zip(u, w))
    vw = tuple(a + b for a, b in zip(v, w))
    assert compare(uw, vw, order) == c
    assert compare((0, 0, 0), u, order) <= 0
