from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thuetwist.balls import CBall, horner, isolate_roots, isolate_roots_adaptive, sqrt_bounds
from thuetwist.polynomials import IntPolynomial, from_roots

rats = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=10 ** 4))
def test_sqrt_bounds_enclose(q):
    lo, hi = sqrt_bounds(q, 80)
    assert lo * lo <= q <= hi * hi
    assert hi - lo == Fraction(1, 2 ** 80)


@given(rats, rats, rats, rats)
def test_ball_arithmetic_encloses_exact_result(a, b, c, d):
    x, y = CBall.exact((a, b), 40), CBall.exact((c, d), 40)
    prod = (a * c - b * d, a * d + b * c)
    assert (x * y).contains(prod)
    assert (x + y).contains((a + c, b + d))
    assert (x - y).contains((a - c, b - d))


def test_isolation_x2_minus_2():
    roots = isolate_roots(IntPolynomial([-2, 0, 1]), 64)
    assert len(roots) == 2
    assert all(r.im == 0 for r in roots)
    assert roots[0].re < 0 < roots[1].re
    c, r = roots[1].re, roots[1].rad
    assert (c - r) ** 2 <= 2 <= (c + r) ** 2
    assert roots[1].rad < Fraction(1, 2 ** 64)


def test_isolation_mixed_roots_sorted_and_paired():
    roots = isolate_roots(IntPolynomial([-2, 0, 0, 0, 1]), 64)
    assert [r.im == 0 for r in roots].count(True) == 2
    keys = [(r.re, r.im) for r in roots]
    assert keys == sorted(keys)
    complex_roots = [r for r in roots if r.im != 0]
    assert complex_roots[0].im == -complex_roots[1].im
    for i, r in enumerate(roots):
        for s in roots[i + 1:]:
            assert not r.overlaps(s)


def test_isolation_rejects_repeated_roots():
    p = IntPolynomial([-2, 0, 1])
    with pytest.raises(ValueError):
        isolate_roots(p * p, 64)


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=5, unique=True))
def test_isolated_balls_contain_integer_roots(roots):
    p = IntPolynomial(from_roots(roots))
    balls = isolate_roots_adaptive(p, 64)
    assert sorted(roots) == [round(b.re) for b in balls]
    for r, b in zip(sorted(roots), balls):
        assert b.contains(r)


def test_horner_over_ball():
    z = CBall.exact(Fraction(1, 3), 60)
    val = horner([1, 2, 3], z)
    assert val.contains(1 + Fraction(2, 3) + Fraction(3, 9))
