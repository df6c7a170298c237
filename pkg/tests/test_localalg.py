import random
from fractions import Fraction

import pytest

from conftest import GOLDEN, derivative
from htaction import catalog
from htaction.localalg import (
    AlgebraError,
    InvalidAlgebra,
    LocalAlgebra,
    NotInMaximalIdeal,
    NotNilpotent,
    NotUnipotentUnit,
    check_axioms,
    elem_mul,
    exp,
    filtration_basis_check,
    format_table,
    hilbert_function,
    log,
    nilpotency_index,
    parse_table,
)
from htaction.parsing import parse_polynomial
from htaction.polyring import Polynomial


def names(prefix, n):
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


class TestElemMul:
    def test_unit(self, ex33):
        b = ex33.element([3, 1, Fraction(-1, 2), 0, 7])
        assert elem_mul(ex33.one(), b) == b

    def test_truncated_square(self, ex32):
        s1 = ex32.basis_element(1)
        assert elem_mul(s1, s1) == ex32.basis_element(2)

    def test_example_3_3_relation(self, ex33):
        s2 = ex33.basis_element(2)
        assert elem_mul(s2, s2) == ex33.basis_element(4)
        s1 = ex33.basis_element(1)
        assert s1 ** 3 == ex33.basis_element(4)

    def test_algebra_mismatch(self, ex32, ex33):
        with pytest.raises(AlgebraError):
            elem_mul(ex32.one(), ex33.one())


class TestExp:
    def test_zero(self, ex33):
        assert exp(ex33.zero()) == ex33.one()

    def test_example_3_2(self, ex32):
        e = exp(ex32.generic(names("x", 2)))
        X = ("x1", "x2")
        assert e.coords == (Polynomial.one(X), parse_polynomial("x1", X),
                            parse_polynomial("x2 + 1/2*x1^2", X))

    def test_example_3_3(self, ex33):
        X = names("x", 4)
        e = exp(ex33.generic(X))
        expected = ["1", "x1", "x2", "x3 + 1/2*x1^2", "x4 + x1*x3 + 1/2*x2^2 + 1/6*x1^3"]
        assert e.coords == tuple(parse_polynomial(t, X) for t in expected)

    def test_requires_maximal_ideal(self, ex32):
        with pytest.raises(NotInMaximalIdeal):
            exp(ex32.one())

    def test_differential_oracle(self, catalog_algebra):
        # E = exp(sum xi si) is the unique solution of dE/dxi = si*E, E(0) = 1
        A = catalog_algebra
        X = names("x", A.n)
        E = exp(A.generic(X))
        for i in range(1, A.dim):
            dE = A.element([derivative(c, X[i - 1]) for c in E.coords])
            assert dE == A.basis_element(i, X) * E
        assert E.substitute([0] * A.n) == A.one()


class TestLog:
    def test_one(self, ex33):
        assert log(ex33.one()).is_zero()

    def test_two_term_series(self, ex32):
        a = Polynomial.var("a", ("a",))
        u = ex32.element([1, a, 0])
        assert log(u).coords == (0, a, -a ** 2 / 2)

    def test_inverts_exp(self, catalog_algebra):
        X = names("x", catalog_algebra.n)
        x = catalog_algebra.generic(X)
        assert log(exp(x)) == x

    def test_requires_unipotent(self, ex32):
        with pytest.raises(NotUnipotentUnit):
            log(ex32.element([2, 0, 0]))


class TestInvariants:
    def test_nilpotency_index(self, ex32, ex33):
        assert nilpotency_index(catalog.get("standard-4").algebra) == 2
        assert nilpotency_index(ex32) == 3
        assert nilpotency_index(ex33) == 4

    def test_hilbert_function(self, ex32, ex33):
        assert hilbert_function(ex32) == [1, 1, 1]
        assert hilbert_function(catalog.get("dim3-square-zero").algebra) == [1, 2]
        assert hilbert_function(ex33) == [1, 2, 1, 1]

    def test_filtration_check(self, ex32):
        assert filtration_basis_check(ex32)
        assert not filtration_basis_check(ex32.rebased([0, 2, 1]))
        std = catalog.get("standard-3").algebra
        assert filtration_basis_check(std.rebased([0, 3, 1, 2]))

    def test_filtration_check_needs_adapted_basis(self):
        # basis (s1, s1 + s2): both of level 1, but nothing spans m^2
        # u = S, v = S^2 in Q[S]/(S^3); b1 = u, b2 = u + v; every product is v = b2 - b1
        v = {1: -1, 2: 1}
        A = LocalAlgebra.from_products(2, {(1, 1): v, (1, 2): v, (2, 2): v}, check=False)
        assert check_axioms(A).ok
        assert A.levels() == [1, 1]
        assert not filtration_basis_check(A)

    def test_catalog_invariants(self, catalog_algebra):
        A = catalog_algebra
        d = nilpotency_index(A)
        h = hilbert_function(A)
        assert d <= A.dim
        assert all(v > 0 for v in h) and sum(h) == A.dim
        assert check_axioms(A).ok


class TestAxioms:
    def test_catalog_passes(self, catalog_algebra):
        assert check_axioms(catalog_algebra).ok

    def test_noncommutative_injection(self, ex33):
        bad = ex33.with_product(1, 2, [0, 0, 0, 1, 0], symmetric=False)
        report = check_axioms(bad)
        assert not report.commutative and not report.ok

    def test_unit_square_injection(self, ex32):
        bad = ex32.with_product(1, 1, [1, 0, 0])
        report = check_axioms(bad)
        assert not report.nilpotent
        with pytest.raises(NotNilpotent):
            nilpotency_index(bad)
        with pytest.raises(NotNilpotent):
            exp(bad.generic(("x1", "x2")))

    def test_constructor_validates(self, ex32):
        table = [list(r) for r in ex32.with_product(1, 1, [1, 0, 0]).table]
        with pytest.raises(InvalidAlgebra):
            LocalAlgebra(table)

    def test_wrong_length_element(self, ex32):
        with pytest.raises(AlgebraError):
            ex32.element([1, 2])


def _random_element(A, rng, unit=0):
    return A.element([unit] + [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(A.n)])


def test_exp_is_a_homomorphism_symbolically(catalog_algebra):
    A = catalog_algebra
    X, Y = names("x", A.n), names("y", A.n)
    U = X + Y
    a, b = A.generic(X, U), A.generic(Y, U)
    assert exp(a + b) == exp(a) * exp(b)


def test_exp_log_on_random_rationals(catalog_algebra):
    A = catalog_algebra
    rng = random.Random(A.dim * 7919)
    for _ in range(100):
        a, b = _random_element(A, rng), _random_element(A, rng)
        assert exp(a + b) == exp(a) * exp(b)
        assert log(exp(a)) == a
        u = _random_element(A, rng, unit=1)
        assert exp(log(u)) == u


def test_exp_minus_linear_part_lies_in_m2(catalog_algebra):
    A = catalog_algebra
    X = names("x", A.n)
    x = A.generic(X)
    rest = exp(x) - 1 - x
    basis_m2 = A._ideal_powers[1]
    # every polynomial coefficient vector of rest lies in m^2
    from htaction.linalg import rank
    monos = {m for c in rest.coords for m in c.terms}
    for m in monos:
        v = [c.coefficient(m) for c in rest.coords]
        assert rank(basis_m2 + [v]) == len(basis_m2)


def test_exp_log_identity_on_generic_unit(catalog_algebra):
    A = catalog_algebra
    X = names("x", A.n)
    u = A.generic(X) + 1
    assert exp(log(u)) == u


class TestTableFormat:
    def test_golden(self, ex33):
        assert format_table(ex33) == (GOLDEN / "example_3_3_table.txt").read_text()

    def test_round_trip(self, catalog_algebra):
        A = catalog_algebra
        B = parse_table(format_table(A))
        assert B == A and B.labels == A.labels

    def test_fraction_coefficients(self):
        text = "dim: 3\nbasis: 1, a, b\n# comment\ns1*s1 = 1/2*s2\n"
        A = parse_table(text)
        assert A.product(1, 1) == (0, 0, Fraction(1, 2))
        assert "s1*s1 = 1/2*s2" in format_table(A)

    def test_rejects_bad_line(self):
        from htaction.parsing import ParseError
        with pytest.raises(ParseError):
            parse_table("dim: 3\ns1 s1 = s2\n")
