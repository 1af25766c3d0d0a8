from math import comb

import pytest
from hypothesis import given, strategies as st

from thuetwist.errors import InvalidParameters, UnsupportedIndex
from thuetwist.families import (
    BernsteinHasseParams,
    ShanksParams,
    bh_build,
    bh_factorization_check,
    bh_params_of,
    bh_predict,
    bh_vw,
    parse_descriptor,
    u2_display_adjudication,
    shanks_build,
    shanks_form,
    shanks_params_of,
    shanks_s_by_trace,
    shanks_st,
    shanks_t_by_trace,
)
from thuetwist.forms import coefficient_U, form_at

VALID = [BernsteinHasseParams(D, n, c) for D in (1, 2, 3) for n in (2, 3, 4) for c in (-1, 1)
         if D ** (2 * n) + c >= 2]
params = st.sampled_from([p for p in VALID if p.n <= 3])


def test_bh_params_validation():
    with pytest.raises(InvalidParameters):
        BernsteinHasseParams(1, 2, -1)
    with pytest.raises(InvalidParameters):
        BernsteinHasseParams(1, 1, 1)
    with pytest.raises(InvalidParameters):
        BernsteinHasseParams(1, 2, 3)
    assert BernsteinHasseParams(2, 2, -1).N == 15


def test_bh_build_examples():
    fam = bh_build(BernsteinHasseParams(1, 2, 1))
    assert fam.field.defining_poly.coeffs == (-2, 0, 0, 0, 1)
    assert fam.delta == -1 and fam.nu == 2
    assert bh_build(BernsteinHasseParams(2, 2, -1)).field.defining_poly.coeffs == (-15, 0, 0, 0, 1)


def test_bh_predict_special_values():
    for p in VALID:
        n, D, c = p.n, p.D, p.c
        assert bh_predict(p, 1, 1) == 2 * n * D ** (n + 1)
        expected = 2 * n * D ** (n - 1) * (1 if n % 2 == 0 else 2 * D ** (2 * n) + c)
        assert bh_predict(p, 2 * n - 1, 1) == expected
    with pytest.raises(UnsupportedIndex):
        bh_predict(BernsteinHasseParams(1, 3, 1), 3, 0)


@given(params, st.integers(-3, 3))
def test_bh_predict_matches_forms(p, a):
    fam = bh_build(p)
    for h in {1, 2, 2 * p.n - 1, 2 * p.n}:
        assert bh_predict(p, h, a) == coefficient_U(fam, h, a)


@given(params, st.integers(-3, 3))
def test_bh_vw_consistency(p, a):
    fam = bh_build(p)
    for h in range(0, 2 * p.n + 1):
        V, w = bh_vw(p, h, a)
        if h < p.n or h == 2 * p.n:
            assert w == 0
        if 1 <= h <= 2 * p.n - 1:
            assert V + w * p.N == coefficient_U(fam, h, a)


def test_bh_vw_special_values():
    for p in VALID:
        n, D, c = p.n, p.D, p.c
        assert bh_vw(p, 2 * n, 3) == ((-c) ** (n * 3) * D ** (2 * n), 0)
        assert bh_vw(p, 2 * n - 1, 1)[0] == 2 * (-c) ** (n - 1) * n * D ** (3 * n - 1)


def test_baseline_untwisted_form():
    for p in VALID:
        coeffs = form_at(bh_build(p), 0).coeffs
        for h in range(1, 2 * p.n):
            assert (-1) ** h * coeffs[h] == comb(2 * p.n, h) * p.D ** h


def test_factorization_examples():
    assert bh_factorization_check(BernsteinHasseParams(1, 2, 1), 0).passed
    for a in (-1, 1):
        assert bh_factorization_check(BernsteinHasseParams(2, 2, 1), a).passed
    assert bh_factorization_check(BernsteinHasseParams(2, 3, -1), 2).passed


def test_u2_display_adjudication():
    for D in (1, 2, 3):
        for c in (-1, 1):
            if (D, c) == (1, -1):
                continue  # X^4 - 0 is not a field
            out = u2_display_adjudication(D, c)
            assert out["predictor_agrees"]
            assert "-6cD^2" in out["matches"]
            if D > 1:
                assert out["matches"] == ["-6cD^2"]


def test_shanks_params():
    ShanksParams(1, 1, 1, 1, 0)
    with pytest.raises(InvalidParameters):
        ShanksParams(1, 2, 4, 1, 2)


def test_shanks_windows():
    s, t = shanks_st(1, 0, 2)
    assert s.values == (0, -3, -6)
    assert t.values == (-3, 0, 3)
    for n in range(-3, 6):
        _, t = shanks_st(n, 0, 2)
        assert t[2] == 3


def test_shanks_forms():
    assert shanks_form(1, 0).coeffs == (1, 0, -3, -1)
    assert shanks_form(4, 0).coeffs == (1, -3, -6, -1)
    assert shanks_form(1, 2).coeffs == (1, 6, 3, -1)


@given(st.integers(-3, 5), st.integers(-6, 6))
def test_shanks_cross_module(n, a):
    fam = shanks_build(ShanksParams(n))
    assert shanks_form(n, a) == form_at(fam, a)
    s, t = shanks_st(n, min(a, 0), max(a, 0))
    assert shanks_t_by_trace(n, a) == t[a]
    assert shanks_s_by_trace(n, a) == s[a]


def test_descriptors():
    fam = parse_descriptor("bh:D=1,n=2,c=1")
    assert bh_params_of(fam) == BernsteinHasseParams(1, 2, 1)
    fam = parse_descriptor("shanks:n=1")
    assert shanks_params_of(fam) == ShanksParams(1)
    fam = parse_descriptor("custom:poly=[1,0,-10,0,1],alpha=[0,1,0,0],eps=[1,-9/2,0,1/2]")
    assert fam.delta == -1 and fam.nu == 2
    for bad in ("bh:D=1,n=2", "bh:D=1,n=2,c=1,x=3", "shanks:m=1", "nope:n=1", "bh:D=1.5,n=2,c=1",
                "custom:poly=[1,0,1],alpha=[0,1],eps=[2**3,0]"):
        with pytest.raises(InvalidParameters):
            parse_descriptor(bad)
