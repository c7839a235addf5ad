"""Scalar, polynomial, and matrix arithmetic: exactness and ring axioms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confal import DOp, MatPoly, Poly, rat
from confal.exact_arith import falling_factorial, gen_binom

rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def polys(max_degree=4):
    return st.dictionaries(
        st.integers(min_value=0, max_value=max_degree), rationals, max_size=4
    ).map(lambda d: Poly(d, "x"))


def dops(max_degree=3):
    return st.dictionaries(
        st.integers(min_value=0, max_value=max_degree), rationals, max_size=3
    ).map(DOp)


def matpolys(n=2):
    return st.lists(
        st.lists(polys(max_degree=2), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    ).map(lambda rows: MatPoly(rows, "x"))


# -- scalars --------------------------------------------------------------------------


def test_rat_coercions():
    assert rat(3) == Fraction(3)
    assert rat("-2/3") == Fraction(-2, 3)
    assert rat(Fraction(5, 10)) == Fraction(1, 2)
    with pytest.raises(TypeError):
        rat(0.5)


def test_rat_always_reduced_positive_denominator():
    v = rat(Fraction(6, -4))
    assert v.denominator > 0 and v.numerator == -3 and v.denominator == 2


@given(st.integers(min_value=-20, max_value=20), st.integers(min_value=1, max_value=10))
def test_gen_binom_pascal_rule(n, k):
    assert gen_binom(n, k) == gen_binom(n - 1, k) + gen_binom(n - 1, k - 1)


def test_gen_binom_values():
    assert gen_binom(4, 2) == 6
    assert gen_binom(2, 5) == 0  # vanishes for 0 <= n < k
    assert gen_binom(-1, 3) == -1  # nonzero for every negative upper index
    assert gen_binom(-2, 2) == 3


def test_falling_factorial():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(2, 4) == 0
    assert falling_factorial(-1, 2) == 2


# -- polynomials --------------------------------------------------------------------------


def test_poly_no_stored_zeros():
    p = Poly({0: 1, 2: Fraction(0)}, "x")
    assert p.coeffs == {0: Fraction(1)}
    assert (p - p).coeffs == {}


def test_poly_negative_exponent_rejected():
    with pytest.raises(ValueError):
        Poly({-1: 1}, "x")


def test_poly_variable_mismatch():
    with pytest.raises(ValueError):
        Poly.variable("x") * Poly.variable("y")
    # constants adopt the other operand's variable
    assert Poly.const(2, "y") * Poly.variable("x") == Poly.monomial(1, 2, "x")


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_poly_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * Poly.one("x") == p
    assert p + Poly.zero("x") == p


@settings(max_examples=60)
@given(polys(), polys())
def test_poly_derive_is_a_derivation(p, q):
    assert (p * q).derive() == p.derive() * q + p * q.derive()


def test_poly_divexact():
    p = Poly({2: 1, 1: -3, 0: 2}, "x")  # (x-1)(x-2)
    q = Poly({1: 1, 0: -1}, "x")
    assert p.divexact(q) == Poly({1: 1, 0: -2}, "x")
    with pytest.raises(ArithmeticError):
        Poly({1: 1, 0: 1}, "x").divexact(Poly({1: 1}, "x"))


def test_poly_format():
    assert repr(Poly({3: 2, 1: -1, 0: Fraction(1, 2)}, "x")) == "2*x^3 - x + 1/2"
    assert repr(Poly.zero()) == "0"


# -- operator polynomials -----------------------------------------------------------------


@settings(max_examples=60)
@given(dops(), dops(), dops())
def test_dop_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_dop_basic():
    assert DOp.d(0) == DOp.one()
    assert DOp.d(2) * DOp.d(3) == DOp.d(5)
    assert DOp.d().times_d() == DOp.d(2)
    assert DOp.const(0).is_zero()
    assert repr(DOp.d(2) * 3 - 1) == "3*d^2 - 1"


# -- matrices -------------------------------------------------------------------------------


@settings(max_examples=30)
@given(matpolys(), matpolys(), matpolys())
def test_matpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_matpoly_units_multiply_like_matrix_units():
    e12 = MatPoly.unit(2, 0, 1)
    e21 = MatPoly.unit(2, 1, 0)
    assert e12 * e21 == MatPoly.unit(2, 0, 0)
    assert (e12 * e12).is_zero()
    assert e12 * MatPoly.identity(2) == e12


def test_matpoly_derive_and_det():
    x = Poly.variable("x")
    m = MatPoly([[x * x, Poly.one()], [Poly.zero(), x]], "x")
    assert m.derive() == MatPoly([[2 * x, Poly.zero()], [Poly.zero(), Poly.one()]], "x")
    assert m.det() == x ** 3
    assert MatPoly.identity(3).det() == Poly.one()


def test_matpoly_requires_square():
    with pytest.raises(ValueError):
        MatPoly([[Poly.one(), Poly.zero()]], "x")
