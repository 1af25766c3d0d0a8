"""Exact linear recurrences: verification, minimal fitting, predicted characteristic polynomials.

Conventions: a recurrence of order k has a monic characteristic polynomial
T^k + p_{k-1} T^{k-1} + ... + p_0 and means

    s_{a+k} = -(p_{k-1} s_{a+k-1} + ... + p_0 s_a)

for every index where all terms are defined.  Nothing here uses a tolerance
except the certified rounding step in :func:`cubic_unit_charpoly`.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .balls import CBall, isolate_roots
from .errors import (
    IrreducibilityFailed,
    NoRecurrenceFound,
    NotIrreducible,
    OddDegreeUnsupported,
    PrecisionExhausted,
    WindowTooShort,
)
from .numfield import NumberField
from .polynomials import IntPolynomial, RatPolynomial, from_roots


@dataclass(frozen=True)
class SequenceWindow:
    base: int
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if not vals:
            raise ValueError("a sequence window cannot be empty")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, fn, a_min: int, a_max: int) -> "SequenceWindow":
        return cls(a_min, tuple(fn(a) for a in range(a_min, a_max + 1)))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, a: int) -> Fraction:
        i = a - self.base
        if not 0 <= i < len(self.values):
            raise IndexError(f"index {a} outside window [{self.base}, {self.last}]")
        return self.values[i]

    @property
    def last(self) -> int:
        return self.base + len(self.values) - 1

    @property
    def indices(self) -> range:
        return range(self.base, self.last + 1)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class LinearRecurrence:
    charpoly: RatPolynomial

    def __post_init__(self):
        p = self.charpoly
        if not isinstance(p, RatPolynomial):
            p = RatPolynomial(p.coeffs if hasattr(p, "coeffs") else p)
            object.__setattr__(self, "charpoly", p)
        if not p.is_monic():
            raise ValueError("characteristic polynomial must be monic")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "LinearRecurrence":
        """From s_{a+k} = coeffs[0] s_{a+k-1} + ... + coeffs[k-1] s_a."""
        return cls(RatPolynomial([-Fraction(c) for c in reversed(coeffs)] + [1]))

    @property
    def order(self) -> int:
        return self.charpoly.degree

    @property
    def coefficients(self) -> tuple:
        """(c_1, ..., c_k) with s_{a+k} = c_1 s_{a+k-1} + ... + c_k s_a."""
        k = self.order
        return tuple(-self.charpoly[k - i] for i in range(1, k + 1))

    def next_value(self, window_tail: Sequence) -> Fraction:
        k = self.order
        return -sum(self.charpoly[i] * window_tail[i] for i in range(k))

    def extend(self, w: SequenceWindow, count: int) -> SequenceWindow:
        vals = list(w.values)
        k = self.order
        for _ in range(count):
            vals.append(self.next_value(vals[-k:]))
        return SequenceWindow(w.base, tuple(vals))

    def to_dict(self) -> dict:
        return {"order": self.order, "charpoly": [str(c) for c in self.charpoly]}


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    first_failure: Optional[int]
    checked: int

    def __bool__(self):
        return self.passed


def verify_recurrence(rec: LinearRecurrence, w: SequenceWindow) -> VerifyResult:
    """Check every index a of the window with a..a+k inside it."""
    k = rec.order
    if len(w) < k + 1:
        raise WindowTooShort(f"window of length {len(w)} cannot test order {k}")
    vals = w.values
    p = rec.charpoly
    checked = 0
    for i in range(len(vals) - k):
        total = sum(p[j] * vals[i + j] for j in range(k + 1))
        checked += 1
        if total != 0:
            return VerifyResult(False, w.base + i, checked)
    return VerifyResult(True, None, checked)


def _berlekamp_massey(seq: Sequence[Fraction]) -> tuple[list, int]:
    """Connection polynomial C (C[0] = 1) and linear complexity L over Q."""
    c = [Fraction(1)]
    b = [Fraction(1)]
    L, m, bd = 0, 1, Fraction(1)
    for n, s in enumerate(seq):
        disc = s + sum(c[i] * seq[n - i] for i in range(1, L + 1) if i < len(c))
        if disc == 0:
            m += 1
            continue
        coef = disc / bd
        new_c = c + [Fraction(0)] * max(0, len(b) + m - len(c))
        for i, bi in enumerate(b):
            new_c[i + m] -= coef * bi
        if 2 * L <= n:
            b, bd, L, m = c, disc, n + 1 - L, 1
        else:
            m += 1
        c = new_c
    c = c + [Fraction(0)] * max(0, L + 1 - len(c))
    return c[: L + 1], L


def fit_minimal_recurrence(w: SequenceWindow, max_order: Optional[int] = None) -> LinearRecurrence:
    """Minimal-order recurrence of the window, certified by length >= 2L + 1.

    The zero sequence returns the order-0 recurrence with characteristic
    polynomial 1.
    """
    if max_order is None:
        max_order = (len(w) - 1) // 2
    c, L = _berlekamp_massey(w.values)
    if L > max_order:
        raise NoRecurrenceFound(f"linear complexity {L} exceeds probe order {max_order}")
    if len(w) < 2 * L + 1:
        raise NoRecurrenceFound(f"window of length {len(w)} cannot certify order {L}")
    # charpoly is the reciprocal of the connection polynomial
    rec = LinearRecurrence(RatPolynomial(list(reversed(c))))
    if L and not verify_recurrence(rec, w):
        raise NoRecurrenceFound("fitted recurrence does not hold on the window")
    return rec


def divides(p: RatPolynomial, q: RatPolynomial) -> bool:
    """Exact divisibility in Q[T]."""
    if p.is_zero():
        return q.is_zero()
    return (q % p).is_zero()


# -- quadratic units --------------------------------------------------------------

def _quadratic_field(t: int, delta: int) -> NumberField:
    if delta not in (-1, 1):
        raise ValueError("delta must be +-1")
    disc = t * t - 4 * delta
    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
        raise NotIrreducible(f"T^2 - {t}T + {delta} is reducible")
    try:
        return NumberField(IntPolynomial([delta, -t, 1]))
    except IrreducibilityFailed as exc:  # pragma: no cover - covered by the square test
        raise NotIrreducible(str(exc)) from exc


def _rational_product(roots) -> IntPolynomial:
    coeffs = from_roots(roots)
    out = []
    for c in coeffs:
        if hasattr(c, "coords"):
            if not c.is_rational():
                raise AssertionError("product polynomial has irrational coefficient")
            c = c.coords[0]
        c = Fraction(c)
        if c.denominator != 1:
            raise AssertionError("product polynomial has non-integral coefficient")
        out.append(c.numerator)
    return IntPolynomial(out)


def quadratic_unit_charpoly(t: int, delta: int, h: int) -> IntPolynomial:
    """prod_{l=0..h} (T - eps^l epsbar^(h-l)) for eps a root of T^2 - tT + delta."""
    if h < 1:
        raise ValueError("h must be >= 1")
    k = _quadratic_field(t, delta)
    eps = k.gen
    bar = t - eps
    return _rational_product([eps ** l * bar ** (h - l) for l in range(h + 1)])


def quadratic_unit_dual_charpoly(t: int, delta: int, d: int, h: int) -> IntPolynomial:
    """prod_{l=0..d-h} (T - delta^(d/2) eps^-l epsbar^(-d+h+l)); d must be even."""
    if d % 2:
        raise OddDegreeUnsupported("delta^(d/2) needs an even field degree")
    if not 1 <= h <= d:
        raise ValueError("h must lie in [1, d]")
    k = _quadratic_field(t, delta)
    eps = k.gen
    bar = t - eps
    sign = delta ** (d // 2)
    return _rational_product([sign * eps ** (-l) * bar ** (-d + h + l) for l in range(d - h + 1)])


@dataclass(frozen=True)
class InhomogeneousRecurrence:
    """s_{a+2} = c1 s_{a+1} + c2 s_a + c3 * base^a."""

    homogeneous: LinearRecurrence
    forcing_base: int
    forcing_coeff: Fraction

    def __post_init__(self):
        if abs(self.forcing_base) != 1:
            raise ValueError("forcing base must be +-1")

    def residual(self, w: SequenceWindow, a: int) -> Fraction:
        c1, c2 = self.homogeneous.coefficients
        return w[a + 2] - c1 * w[a + 1] - c2 * w[a] - self.forcing_coeff * Fraction(self.forcing_base) ** a

    def verify(self, w: SequenceWindow) -> VerifyResult:
        if len(w) < 3:
            raise WindowTooShort("need at least three values")
        checked = 0
        for a in range(w.base, w.last - 1):
            checked += 1
            if self.residual(w, a) != 0:
                return VerifyResult(False, a, checked)
        return VerifyResult(True, None, checked)


def inhomogeneous_U2(t: int, delta: int, w: SequenceWindow) -> tuple[InhomogeneousRecurrence, VerifyResult]:
    """Fit c3 from U_2(-1), U_2(0), U_2(1) and verify on the whole window."""
    if w.base > -1 or w.last < 1:
        raise WindowTooShort("window must cover a = -1, 0, 1")
    # (T - eps^2)(T - epsbar^2) = T^2 - (t^2 - 2 delta) T + 1
    c1, c2 = Fraction(t * t - 2 * delta), Fraction(-1)
    hom = LinearRecurrence.from_coefficients([c1, c2])
    c3 = Fraction(delta) ** 1 * (w[1] - c1 * w[0] - c2 * w[-1])  # delta^(-1) = delta
    rec = InhomogeneousRecurrence(hom, delta, c3)
    return rec, rec.verify(w)


# -- cubic units -------------------------------------------------------------------

def _check_cubic(r: int, s: int, delta: int):
    if delta not in (-1, 1):
        raise ValueError("delta must be +-1")
    # monic with constant -delta: the only possible rational roots are +-1
    if r - s == 1 - delta or r + s == -1 - delta:
        raise NotIrreducible(f"T^3 - {r}T^2 + {s}T - {delta} has a root +-1")


def cubic_min_poly(r: int, s: int, delta: int) -> IntPolynomial:
    _check_cubic(r, s, delta)
    return IntPolynomial([-delta, s, -r, 1])


def cubic_unit_recurrences(r: int, s: int, delta: int, d: int) -> tuple[LinearRecurrence, LinearRecurrence]:
    """(recurrence of U_1, recurrence of U_{d-1}) for a cubic unit eps in a degree-d field."""
    _check_cubic(r, s, delta)
    e = delta ** (d + 1)
    u1 = LinearRecurrence(RatPolynomial([-delta, s, -r, 1]))
    dual = LinearRecurrence(RatPolynomial([-e, delta * r, -e * s, 1]))
    return u1, dual


def cubic_initial_conditions(A, B, C, r: int, s: int, delta: int) -> tuple[Fraction, Fraction, Fraction]:
    """(U_1(-1), U_1(0), U_1(1)) for alpha = A + B eps + C eps^2 in the cubic field."""
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    p2 = r * r - 2 * s
    p3 = r ** 3 - 3 * r * s + 3 * delta
    return (A * delta * s + 3 * B + C * r,
            3 * A + B * r + C * p2,
            A * r + B * p2 + C * p3)


def cubic_dual_initial_conditions(r: int, s: int, delta: int) -> tuple[int, int, int]:
    """(U_2(-1), U_2(0), U_2(1)) in the special case alpha = eps, d = 3."""
    return 3, s, s * s - 2 * delta * r


def _monomial_exponents(h: int):
    for l1 in range(h + 1):
        for l2 in range(h - l1 + 1):
            yield l1, l2, h - l1 - l2


def cubic_unit_charpoly(r: int, s: int, delta: int, h: int, precision_bits: int = 128,
                        window: Optional[SequenceWindow] = None) -> IntPolynomial:
    """prod over l1+l2+l3 = h of (T - eps1^l1 eps2^l2 eps3^l3), degree (h+1)(h+2)/2.

    The product is formed in certified ball arithmetic from isolated roots and
    each coefficient is rounded to the unique integer its enclosure admits.
    When a window is given, the rounded polynomial must annihilate it exactly.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    roots = isolate_roots(cubic_min_poly(r, s, delta), precision_bits)
    prec = roots[0].prec
    monomials = []
    for l1, l2, l3 in _monomial_exponents(h):
        monomials.append(roots[0] ** l1 * roots[1] ** l2 * roots[2] ** l3)
    one = CBall.exact(1, prec)
    coeffs = [one]
    for z in monomials:
        new = [CBall.exact(0, prec)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - z * c
        coeffs = new
    out = []
    half = Fraction(1, 2)
    for c in coeffs:
        n = round(c.re)
        if abs(c.re - n) + c.rad >= half or abs(c.im) + c.rad >= half:
            raise PrecisionExhausted("coefficient enclosure does not isolate an integer")
        out.append(int(n))
    poly = IntPolynomial(out)
    if window is not None and not verify_recurrence(LinearRecurrence(RatPolynomial(poly.coeffs)), window):
        raise AssertionError("rounded product polynomial does not annihilate the window")
    return poly


# -- reporting ---------------------------------------------------------------------

@dataclass
class RecurrenceReport:
    h: int
    predicted_order: int
    fitted_order: int
    predicted_charpoly: RatPolynomial
    fitted_charpoly: RatPolynomial
    divides: bool
    verified: bool

    @property
    def passed(self) -> bool:
        return self.divides and self.verified and self.fitted_order <= self.predicted_order

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "predicted_order": self.predicted_order,
            "fitted_order": self.fitted_order,
            "predicted_charpoly": [str(c) for c in self.predicted_charpoly],
            "fitted_charpoly": [str(c) for c in self.fitted_charpoly],
            "divides": self.divides,
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def recurrence_report(h: int, predicted, w: SequenceWindow) -> RecurrenceReport:
    """Fit the window and compare with a predicted characteristic polynomial."""
    pred = RatPolynomial(predicted.coeffs)
    fitted = fit_minimal_recurrence(w)
    ok = verify_recurrence(LinearRecurrence(pred), w).passed if len(w) > pred.degree else False
    return RecurrenceReport(h, pred.degree, fitted.order, pred, fitted.charpoly,
                            divides(fitted.charpoly, pred), ok)


def default_window_bounds(max_order: int) -> tuple[int, int]:
    """a in [-(2k+2), 2k+2] for the largest candidate order k."""
    return -(2 * max_order + 2), 2 * max_order + 2
