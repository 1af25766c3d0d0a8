"""Verification suites shared by the command line and the test-suite.

Each suite returns a :class:`CheckReport`.  Recurrence windows read U_h(a)
from the characteristic polynomial of alpha*eps^a, which is defined for every
a (also where alpha*eps^a has lower degree).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import InvalidParameters
from .families import (
    BernsteinHasseParams,
    ShanksParams,
    bh_factorization_check,
    bh_params_of,
    bh_predict,
    shanks_form,
    shanks_params_of,
    shanks_recurrences,
    shanks_st,
    shanks_t_by_trace,
)
from .forms import CheckReport, TwistedFamily, check_Ud_recurrence, form_at, is_admissible
from .numfield import _det, charpoly, min_poly
from .recurrences import (
    LinearRecurrence,
    SequenceWindow,
    cubic_initial_conditions,
    cubic_unit_charpoly,
    cubic_unit_recurrences,
    default_window_bounds,
    inhomogeneous_U2,
    quadratic_unit_charpoly,
    quadratic_unit_dual_charpoly,
    recurrence_report,
    verify_recurrence,
)

SUITES = ("prop41", "shanks", "quadratic", "cubic", "ud", "factorization")


def U_value(family: TwistedFamily, h: int, a: int) -> Fraction:
    """(-1)^h times the T^(d-h) coefficient of the characteristic polynomial of alpha*eps^a."""
    d = family.degree
    return (-1) ** h * charpoly(family.element(a))[d - h]


def U_window(family: TwistedFamily, h: int, a_min: int, a_max: int) -> SequenceWindow:
    return SequenceWindow.from_function(lambda a: U_value(family, h, a), a_min, a_max)


def _need_bh(family: TwistedFamily) -> BernsteinHasseParams:
    p = bh_params_of(family)
    if p is None:
        raise InvalidParameters("this suite needs a bh:D=..,n=..,c=.. family")
    return p


def suite_closed_forms(family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    """Closed forms for h in {1, 2, 2n-1, 2n} against the form, plus U_h(0) = C(2n, h) D^h."""
    p = _need_bh(family)
    n, D = p.n, p.D
    checked = 0
    for a in a_values:
        if not is_admissible(family, a):
            continue
        coeffs = form_at(family, a).coeffs
        for h in sorted({1, 2, 2 * n - 1, 2 * n}):
            truth = (-1) ** h * coeffs[h]
            pred = bh_predict(p, h, a)
            checked += 1
            if pred != truth:
                return CheckReport("prop41", False, checked, {"a": a, "h": h, "predicted": str(pred), "actual": str(truth)})
    coeffs = form_at(family, 0).coeffs
    for h in range(1, 2 * n):
        checked += 1
        if (-1) ** h * coeffs[h] != comb(2 * n, h) * D ** h:
            return CheckReport("prop41", False, checked, {"a": 0, "h": h, "baseline": str(comb(2 * n, h) * D ** h),
                                                          "actual": str((-1) ** h * coeffs[h])})
    return CheckReport("prop41", True, checked, details={"family": p.descriptor})


def suite_factorization(family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    p = _need_bh(family)
    checked = 0
    for a in a_values:
        rep = bh_factorization_check(p, a, family)
        checked += rep.checked
        if not rep.passed:
            return CheckReport("factorization", False, checked, rep.first_failure)
    return CheckReport("factorization", True, checked, details={"family": p.descriptor})


def suite_shanks(family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    """Forms from (s_a, t_a), their recurrences and initial triples, and t_a by trace."""
    p = shanks_params_of(family)
    if p is None or p != ShanksParams(p.n):
        raise InvalidParameters("this suite needs a shanks:n=.. family with default exponents")
    n = p.n
    a_values = sorted(set(a_values))
    if not a_values:
        raise InvalidParameters("empty a range")
    checked = 0
    s, t = shanks_st(n, min(a_values[0], 0), max(a_values[-1], 2))
    triples = {"s": (s[0], s[1], s[2]), "t": (t[0], t[1], t[2])}
    expected = {"s": (n - 1, -n - 2, -n * n - n - 4), "t": (-n - 2, n - 1, 3)}
    for key in ("s", "t"):
        checked += 1
        if triples[key] != expected[key]:
            return CheckReport("shanks", False, checked, {"initial": key, "got": [str(v) for v in triples[key]]})
    rs, rt = shanks_recurrences(n)
    for key, rec, w in (("s", rs, s), ("t", rt, t)):
        res = verify_recurrence(rec, w)
        checked += res.checked
        if not res.passed:
            return CheckReport("shanks", False, checked, {"recurrence": key, "a": res.first_failure})
    for a in a_values:
        checked += 2
        if shanks_form(n, a) != form_at(family, a):
            return CheckReport("shanks", False, checked, {"a": a, "form": str(shanks_form(n, a)),
                                                          "actual": str(form_at(family, a))})
        if shanks_t_by_trace(n, a) != t[a]:
            return CheckReport("shanks", False, checked, {"a": a, "t_trace": str(shanks_t_by_trace(n, a))})
    return CheckReport("shanks", True, checked, details={"n": n})


def _eps_poly(family: TwistedFamily, degree: int):
    f = min_poly(family.eps)
    if f.degree != degree:
        raise InvalidParameters(f"eps has degree {f.degree}, this suite needs {degree}")
    return f


def suite_quadratic(family: TwistedFamily, hs: Iterable[int] = None) -> CheckReport:
    """U_h windows against both quadratic-unit products, and the U_2 inhomogeneous recurrence."""
    f = _eps_poly(family, 2)
    t, delta = -f[1], f[0]
    d = family.degree
    hs = list(range(1, d)) if hs is None else list(hs)
    lo, hi = default_window_bounds(d + 1)
    reports = []
    checked = 0
    for h in hs:
        w = U_window(family, h, lo, hi)
        preds = [quadratic_unit_charpoly(t, delta, h)]
        if d % 2 == 0:
            preds.append(quadratic_unit_dual_charpoly(t, delta, d, h))
        for pred in preds:
            rep = recurrence_report(h, pred, w)
            reports.append(rep.to_dict())
            checked += 1
            if not rep.passed:
                return CheckReport("quadratic", False, checked, rep.to_dict(), {"reports": reports})
    if d >= 3 and 2 in hs:
        _, res = inhomogeneous_U2(t, delta, U_window(family, 2, lo, hi))
        checked += 1
        if not res.passed:
            return CheckReport("quadratic", False, checked, {"inhomogeneous_U2": res.first_failure}, {"reports": reports})
    return CheckReport("quadratic", True, checked, details={"t": t, "delta": delta, "reports": reports})


def _coords_in_eps_basis(family: TwistedFamily):
    """(A, B, C) with alpha = A + B eps + C eps^2, for a cubic field generated by eps."""
    K = family.field
    cols = [K.one().coords, family.eps.coords, (family.eps ** 2).coords]
    rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    det = _det(rows)
    rhs = family.alpha.coords
    out = []
    for j in range(3):
        m = [[rhs[i] if k == j else rows[i][k] for k in range(3)] for i in range(3)]
        out.append(_det(m) / det)
    return out


def suite_cubic(family: TwistedFamily, hs: Iterable[int] = (1, 2)) -> CheckReport:
    """U_h windows against the cubic-unit product polynomials, plus the U_1 / U_(d-1) recurrences."""
    f = _eps_poly(family, 3)
    r, s, delta = -f[2], f[1], -f[0]
    d = family.degree
    hs = [h for h in hs if 1 <= h <= d - 1]
    reports = []
    checked = 0
    for h in hs:
        k = (h + 1) * (h + 2) // 2
        lo, hi = default_window_bounds(k)
        w = U_window(family, h, lo, hi)
        pred = cubic_unit_charpoly(r, s, delta, h, window=w)
        rep = recurrence_report(h, pred, w)
        reports.append(rep.to_dict())
        checked += 1
        if not rep.passed:
            return CheckReport("cubic", False, checked, rep.to_dict(), {"reports": reports})
    lo, hi = default_window_bounds(3)
    u1, dual = cubic_unit_recurrences(r, s, delta, d)
    for name, rec, h in (("U_1", u1, 1), ("U_d-1", dual, d - 1)):
        res = verify_recurrence(rec, U_window(family, h, lo, hi))
        checked += res.checked
        if not res.passed:
            return CheckReport("cubic", False, checked, {"recurrence": name, "a": res.first_failure}, {"reports": reports})
    if d == 3:
        A, B, C = _coords_in_eps_basis(family)
        expected = cubic_initial_conditions(A, B, C, r, s, delta)
        got = tuple(U_value(family, 1, a) for a in (-1, 0, 1))
        checked += 1
        if expected != got:
            return CheckReport("cubic", False, checked, {"initial": [str(v) for v in got],
                                                         "expected": [str(v) for v in expected]})
    return CheckReport("cubic", True, checked, details={"r": r, "s": s, "delta": delta, "reports": reports})


def suite_ud(family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    return check_Ud_recurrence(family, a_values)


def run_suite(name: str, family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    a_values = list(a_values)
    if name == "prop41":
        return suite_closed_forms(family, a_values)
    if name == "factorization":
        return suite_factorization(family, a_values)
    if name == "shanks":
        return suite_shanks(family, a_values)
    if name == "quadratic":
        return suite_quadratic(family)
    if name == "cubic":
        return suite_cubic(family)
    if name == "ud":
        return suite_ud(family, a_values)
    raise InvalidParameters(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
