from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thuetwist.errors import AlphaNotPrimitive, AlphaZero, DegenerateDegree, NotAUnit, TorsionUnit
from thuetwist.families import BernsteinHasseParams, ShanksParams, bh_build, shanks_build
from thuetwist.forms import (
    BinaryForm,
    admissible_range,
    check_Ud_recurrence,
    coefficient_U,
    evaluate,
    excluded_values,
    family_new,
    form_at,
)
from thuetwist.numfield import NumberField, embeddings, eval_all_embeddings, min_poly
from thuetwist.polynomials import IntPolynomial

SHANKS1 = shanks_build(ShanksParams(1))
BH121 = bh_build(BernsteinHasseParams(1, 2, 1))


def test_binary_form_basics():
    f = BinaryForm((1, 0, -3, -1), 0)
    assert f.degree == 3
    assert evaluate(f, 1, 0) == 1
    assert evaluate(f, 2, 1) == 1
    assert evaluate(f, 1, -3) == 1
    assert str(f) == "X^3 - 3XY^2 - Y^3"
    assert BinaryForm.from_json(f.to_json()) == f
    assert f.to_csv_row() == "0,1,0,-3,-1"
    with pytest.raises(ValueError):
        BinaryForm((-1, 2))


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=6).filter(lambda c: c[0] > 0),
       st.integers(-30, 30), st.integers(-30, 30))
def test_evaluate_matches_naive_sum(coeffs, x, y):
    f = BinaryForm(tuple(coeffs))
    d = f.degree
    assert evaluate(f, x, y) == sum(c * x ** (d - h) * y ** h for h, c in enumerate(coeffs))


def test_family_invariants():
    assert (SHANKS1.delta, SHANKS1.nu) == (1, 1)
    assert (BH121.delta, BH121.nu) == (-1, 2)


def test_family_rejections():
    K = NumberField(IntPolynomial([-2, 0, 0, 0, 1]))
    w = K.gen
    with pytest.raises(TorsionUnit):
        family_new(K, 1 + w, K.one())
    with pytest.raises(TorsionUnit):
        family_new(K, 1 + w, -K.one())
    with pytest.raises(NotAUnit):
        family_new(K, 1 + w, w)
    with pytest.raises(AlphaNotPrimitive):
        family_new(K, w ** 2, 1 + w ** 2)
    with pytest.raises(AlphaZero):
        family_new(K, K.zero(), 1 + w ** 2)


def test_forms_examples():
    assert form_at(BH121, 0).coeffs == (1, -4, 6, -4, -1)
    assert form_at(SHANKS1, 0).coeffs == (1, 0, -3, -1)
    assert form_at(SHANKS1, 1).coeffs == (1, 3, 0, -1)
    assert coefficient_U(BH121, 1, 0) == 4
    assert coefficient_U(BH121, 4, 0) == BH121.alpha.norm()
    assert coefficient_U(BH121, 2, 1) == -6


def test_admissibility():
    assert admissible_range(SHANKS1, -5, 5) == list(range(-5, 6))
    lam = SHANKS1.field.gen
    eps = -(lam + 1).inv()
    fam = family_new(SHANKS1.field, eps ** 2, eps)
    assert excluded_values(fam, -5, 5) == [-2]
    with pytest.raises(DegenerateDegree) as info:
        form_at(fam, -2)
    assert info.value.degree == 1


def test_ud_recurrence():
    assert check_Ud_recurrence(SHANKS1, range(-5, 6)).passed
    assert all(coefficient_U(SHANKS1, 3, a) == 1 for a in range(-4, 5))
    assert all(coefficient_U(BH121, 4, a) == (-1) ** (2 * a + 1) for a in range(-3, 4))
    assert check_Ud_recurrence(BH121, [3]).passed


@given(st.integers(-3, 3), st.integers(-20, 20), st.integers(-20, 20))
def test_evaluate_matches_product_of_embeddings(a, x, y):
    for fam in (SHANKS1, BH121):
        emb = embeddings(fam.field, 64)
        vals = eval_all_embeddings(fam.element(a), emb)
        prod = None
        for v in vals:
            term = v * (-y) + x
            prod = term if prod is None else prod * term
        assert prod.contains(evaluate(form_at(fam, a), x, y))


@given(st.integers(-4, 4))
def test_form_coefficients_primitive_and_monic(a):
    for fam in (SHANKS1, BH121):
        f = form_at(fam, a)
        assert f.coeffs[0] == 1
        assert min_poly(fam.element(a)).coeffs == tuple(reversed(f.coeffs))
