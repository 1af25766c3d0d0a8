"""Exact arithmetic and experiments for twisted families of Thue equations.

A family is given by a number field K, a primitive element alpha and a unit
eps; F_a is the homogenized minimal polynomial of alpha*eps^a.
"""

from .errors import *  # noqa: F401,F403
from .families import (
    BernsteinHasseParams,
    ShanksParams,
    bh_build,
    bh_predict,
    bh_vw,
    parse_descriptor,
    shanks_build,
    shanks_form,
)
from .forms import BinaryForm, TwistedFamily, coefficient_U, evaluate, family_new, form_at
from .numfield import FieldElement, NumberField, charpoly, embeddings, min_poly, norm, trace
from .polynomials import IntPolynomial, RatPolynomial
from .recurrences import LinearRecurrence, SequenceWindow, fit_minimal_recurrence, verify_recurrence
from .siegel import LemmaInstance, classify, lemma_check, lemma_fuzz, siegel_identity_check
from .solver import SearchBox, Solution, brute_force_search, kappa_report, pruned_search

__version__ = "0.1.0"
