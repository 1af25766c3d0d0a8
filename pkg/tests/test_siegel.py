from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thuetwist.families import BernsteinHasseParams, ShanksParams, bh_build, shanks_build
from thuetwist.siegel import LemmaInstance, classify, lemma_check, lemma_fuzz, siegel_identity_check

SHANKS1 = shanks_build(ShanksParams(1))
BH121 = bh_build(BernsteinHasseParams(1, 2, 1))


def test_rational_beta_is_a_tie():
    prof = classify(SHANKS1, 0, 1, 0, Fraction(1, 2))
    assert prof.sets["Sigma_beta"] == [0, 1, 2]
    ties = {e["which"]: e for e in prof.ambiguous}
    assert ties["sigma_beta"]["reason"] == "tie"
    assert ties["sigma_beta"]["indices"] == [0, 1, 2]


def test_shanks_profile_stable_under_precision():
    p1 = classify(SHANKS1, 2, 1, 1, 0.5, 128)
    p2 = classify(SHANKS1, 2, 1, 1, 0.5, 256)
    assert p1.sets == p2.sets
    assert (p1.idx_sigma_alpha, p1.idx_tau_alpha) == (p2.idx_sigma_alpha, p2.idx_tau_alpha)
    assert len(p1.values_gamma) == 3 and all(v.is_real for v in p1.values_gamma)


def test_conjugate_pair_reported_as_tie():
    # for a = 3 the smallest |phi(alpha eps^a)| sits on the complex pair of X^4 - 2
    prof = classify(BH121, 3, 1, 1, Fraction(1, 3))
    ties = {e["which"]: e for e in prof.ambiguous}
    assert ties["tau_alpha"]["reason"] == "tie"
    pair = ties["tau_alpha"]["indices"]
    assert len(pair) == 2 and not prof.values_gamma[pair[0]].is_real
    assert set(pair) <= set(prof.sets["T_alpha"])
    assert "sigma_alpha" not in ties


@given(st.sampled_from([SHANKS1, BH121]), st.integers(-3, 3), st.integers(-30, 30), st.integers(-30, 30),
       st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20))
def test_set_invariants(fam, a, x, y, nu):
    prof = classify(fam, a, x, y, nu, 96)
    assert prof.idx_sigma_alpha in prof.sets["Sigma_alpha"]
    assert prof.idx_tau_alpha in prof.sets["T_alpha"]
    higher = classify(fam, a, x, y, min(nu + Fraction(1, 20), Fraction(19, 20)), 96)
    assert set(higher.sets["Sigma_alpha"]) <= set(prof.sets["Sigma_alpha"])
    assert set(higher.sets["T_alpha"]) <= set(prof.sets["T_alpha"])


@given(st.sampled_from([SHANKS1, BH121]), st.integers(-4, 4), st.integers(-50, 50), st.integers(-50, 50),
       st.permutations([0, 1, 2]))
def test_siegel_residual_contains_zero(fam, a, x, y, triple):
    prof = classify(fam, a, x, y, Fraction(1, 2), 128)
    res = siegel_identity_check(prof, *triple)
    assert res.contains_zero
    assert res.width < Fraction(1, 2 ** 80)


def test_siegel_reference_case_and_precondition():
    prof = classify(SHANKS1, 1, 2, 1, Fraction(1, 2), 128)
    res = siegel_identity_check(prof, 0, 1, 2)
    assert res.contains_zero and res.width < Fraction(1, 2 ** 80)
    with pytest.raises(ValueError):
        siegel_identity_check(prof, 0, 0, 1)


def test_nu_range():
    with pytest.raises(ValueError):
        classify(SHANKS1, 0, 1, 1, 1)
    with pytest.raises(ValueError):
        classify(SHANKS1, 0, 1, 1, 0)


def test_lemma_examples():
    d = Fraction(1, 4)
    assert lemma_check(LemmaInstance(4, (1, -1.1, 0.05, 0.05), d, 4)).kind == "ConclusionHolds"
    assert lemma_check(LemmaInstance(4, (1, -1, 0, 0), d, 4)).kind == "ConclusionHolds"
    assert lemma_check(LemmaInstance(4, (0, 0, 0, 0), d, 4)).kind == "ConclusionHolds"


def test_lemma_hypothesis_failures():
    d = Fraction(1, 4)
    assert lemma_check(LemmaInstance(4, (1, -1, 1, -1), d, 4)).which == "|x_3|<=delta*max"
    assert lemma_check(LemmaInstance(4, (1, 0, 0, 0), d, 4)).which == "sum==0"
    assert lemma_check(LemmaInstance(4, (1, -1, 0, 0), Fraction(1, 3), 4)).which == "delta<=1/(t-2)-1/mu"
    assert lemma_check(LemmaInstance(2, (1, -1), d, 4)).kind == "HypothesisFailed"
    assert lemma_check(LemmaInstance(4, (1, -1, 0), d, 4)).which == "len(xs)==t"


def test_lemma_can_fail_outside_its_hypotheses():
    # delta too large for mu: the conclusion is violated, which is why the hypothesis matters
    inst = LemmaInstance(4, (1, Fraction(-3, 5), Fraction(-1, 5), Fraction(-1, 5)), Fraction(1, 5), 1)
    assert lemma_check(inst).kind == "HypothesisFailed"


@given(st.sampled_from([4, 5, 6]), st.integers(0, 2 ** 32))
def test_fuzz_small_runs(t, seed):
    rep = lemma_fuzz(t, 200, seed)
    assert rep.failures == 0 and rep.trials == 200
    assert rep.delta == Fraction(2, t * (t - 2)) and rep.mu == t


def test_fuzz_deterministic_and_preconditions():
    assert lemma_fuzz(5, 300, 7).to_dict() == lemma_fuzz(5, 300, 7).to_dict()
    with pytest.raises(ValueError):
        lemma_fuzz(5, 0, 1)
    with pytest.raises(ValueError):
        lemma_fuzz(3, 10, 1)
