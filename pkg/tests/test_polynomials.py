from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thuetwist.polynomials import (
    IntPolynomial,
    RatPolynomial,
    count_real_roots,
    cyclotomic,
    from_roots,
    is_squarefree,
    poly_gcd,
    poly_xgcd,
    primitive_part,
    rational_roots,
    squarefree_part,
)

small_ints = st.integers(-20, 20)
int_polys = st.lists(small_ints, min_size=1, max_size=6).map(IntPolynomial)
nonzero_polys = int_polys.filter(lambda p: not p.is_zero())


def test_shape_and_trimming():
    p = IntPolynomial([-1, -3, 0, 1, 0, 0])
    assert p.degree == 3
    assert p.coeffs == (-1, -3, 0, 1)
    assert IntPolynomial([]).degree == -1
    assert str(p) == "X^3 - 3*X - 1"


def test_json_roundtrip():
    p = IntPolynomial([-1, -3, 0, 1])
    assert p.to_json() == '["-1", "-3", "0", "1"]'
    assert IntPolynomial.from_json(p.to_json()) == p
    q = RatPolynomial([Fraction(1, 2), 3])
    assert RatPolynomial.from_json(q.to_json()) == q


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        RatPolynomial([0.5])


@given(int_polys, nonzero_polys)
def test_division_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(nonzero_polys, nonzero_polys)
def test_xgcd_bezout(p, q):
    g, s, t = poly_xgcd(p, q)
    assert s * p + t * q == g
    assert (p % g).is_zero() and (q % g).is_zero()
    assert g == poly_gcd(p, q)


@given(nonzero_polys)
def test_squarefree_part_is_squarefree_and_divides(p):
    sf = squarefree_part(p)
    assert is_squarefree(sf)
    assert (p % sf).is_zero()


def test_squarefree_examples():
    x2m2 = IntPolynomial([-2, 0, 1])
    assert not is_squarefree(x2m2 * x2m2)
    assert primitive_part(squarefree_part(x2m2 * x2m2)) == x2m2


def test_primitive_part_sign_and_content():
    assert primitive_part(RatPolynomial([Fraction(-2, 3), 0, Fraction(-4, 3)])) == IntPolynomial([1, 0, 2])
    assert IntPolynomial([6, 9, 12]).content() == 3


def test_rational_roots():
    p = IntPolynomial([-6, 1, 1])  # (X+3)(X-2)
    assert sorted(rational_roots(p)) == [-3, 2]
    assert rational_roots(IntPolynomial([-1, -3, 0, 1])) == []
    assert rational_roots(IntPolynomial([-1, 2])) == [Fraction(1, 2)]


def test_sturm_counts():
    assert count_real_roots(IntPolynomial([-1, -3, 0, 1])) == 3
    assert count_real_roots(IntPolynomial([-2, 0, 0, 0, 1])) == 2
    assert count_real_roots(IntPolynomial([1, 0, 1])) == 0


@given(st.lists(st.integers(-8, 8), min_size=1, max_size=5, unique=True))
def test_sturm_counts_distinct_integer_roots(roots):
    p = IntPolynomial(from_roots(roots))
    assert count_real_roots(p) == len(roots)
    assert sorted(rational_roots(p)) == sorted(roots)


def test_cyclotomic():
    assert cyclotomic(1) == IntPolynomial([-1, 1])
    assert cyclotomic(4) == IntPolynomial([1, 0, 1])
    assert cyclotomic(12) == IntPolynomial([1, 0, -1, 0, 1])
