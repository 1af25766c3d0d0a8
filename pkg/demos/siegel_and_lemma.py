"""Embedding profiles, the three-term identity enclosure and the sum-lemma fuzz."""

from fractions import Fraction

from thuetwist.families import ShanksParams, shanks_build
from thuetwist.siegel import classify, lemma_fuzz, siegel_identity_check

fam = shanks_build(ShanksParams(1))
prof = classify(fam, 1, 2, 1, Fraction(1, 2))
# T_beta is empty here: the smallest |phi(beta)| exceeds 1, so no modulus lies below its nu-th power
print(prof.to_dict())
print(siegel_identity_check(prof, 0, 1, 2).to_dict())

for t in (4, 5, 6):
    print(lemma_fuzz(t, 5000, seed=7).to_dict())
