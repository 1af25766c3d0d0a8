"""Twisted families of binary forms a -> F_a built from (K, alpha, eps)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (
    AlphaNotPrimitive,
    AlphaZero,
    DegenerateDegree,
    FieldMismatch,
    NotAUnit,
    TorsionUnit,
)
from .numfield import FieldElement, NumberField, is_root_of_unity, is_unit, min_poly
from .polynomials import IntPolynomial


@dataclass(frozen=True)
class BinaryForm:
    """F(X, Y) = sum_h coeffs[h] X^(d-h) Y^h."""

    coeffs: tuple
    a: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("a binary form needs degree >= 1")
        if self.coeffs[0] <= 0:
            raise ValueError("leading coefficient must be positive")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def dehomogenize(self) -> IntPolynomial:
        """F(X, 1) as a univariate polynomial."""
        return IntPolynomial(reversed(self.coeffs))

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs], "a": self.a}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "BinaryForm":
        data = json.loads(text)
        form = cls(tuple(int(c) for c in data["coeffs"]), data.get("a"))
        if form.degree != data["degree"]:
            raise ValueError("degree does not match coefficient count")
        return form

    def to_csv_row(self) -> str:
        return ",".join(str(v) for v in (self.a, *self.coeffs))

    def __str__(self):
        d = self.degree
        parts = []
        for h, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "".join(
                s for s in (
                    "" if d - h == 0 else ("X" if d - h == 1 else f"X^{d - h}"),
                    "" if h == 0 else ("Y" if h == 1 else f"Y^{h}"),
                )
            )
            coef = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+", coef + mono if mono else str(abs(c))))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])


def evaluate(form: BinaryForm, x: int, y: int) -> int:
    """Exact value by homogeneous Horner: ((c0 x + c1 y) x + c2 y^2) x + ..."""
    acc = form.coeffs[0]
    ypow = 1
    for c in form.coeffs[1:]:
        ypow *= y
        acc = acc * x + c * ypow
    return acc


@dataclass(frozen=True)
class TwistedFamily:
    field: NumberField
    alpha: FieldElement
    eps: FieldElement
    delta: int
    nu: int
    label: str = field(default="", compare=False)

    @property
    def degree(self) -> int:
        return self.field.degree

    def element(self, a: int) -> FieldElement:
        """alpha * eps^a."""
        return _twisted_element(self, a)


def family_new(field_: NumberField, alpha: FieldElement, eps: FieldElement, label: str = "") -> TwistedFamily:
    if alpha.field != field_ or eps.field != field_:
        raise FieldMismatch("alpha and eps must lie in the given field")
    if alpha.is_zero():
        raise AlphaZero("alpha must be nonzero")
    if min_poly(alpha).degree != field_.degree:
        raise AlphaNotPrimitive(f"alpha has degree {min_poly(alpha).degree} < {field_.degree}")
    if eps == 1 or eps == -1:
        raise TorsionUnit("eps is +-1")
    if not is_unit(eps):
        raise NotAUnit("eps is not a unit")
    if is_root_of_unity(eps):
        raise TorsionUnit("eps is a root of unity")
    f = min_poly(eps)
    k = f.degree
    delta = (-1) ** k * f[0]
    return TwistedFamily(field_, alpha, eps, delta, field_.degree // k, label)


@lru_cache(maxsize=None)
def _eps_power(eps: FieldElement, a: int) -> FieldElement:
    # negative exponents invert once, then square-and-multiply
    return eps ** a


@lru_cache(maxsize=None)
def _twisted_element(family: TwistedFamily, a: int) -> FieldElement:
    return family.alpha * _eps_power(family.eps, a)


@lru_cache(maxsize=None)
def _form_at(family: TwistedFamily, a: int) -> BinaryForm:
    f = min_poly(family.element(a))
    d = family.degree
    if f.degree != d:
        raise DegenerateDegree(a, f.degree, d)
    return BinaryForm(tuple(f[d - h] for h in range(d + 1)), a)


def form_at(family: TwistedFamily, a: int) -> BinaryForm:
    """Homogenized minimal polynomial of alpha*eps^a; DegenerateDegree if deg < d."""
    return _form_at(family, a)


def coefficient_U(family: TwistedFamily, h: int, a: int) -> int:
    """U_h(a): the h-th elementary symmetric function of the conjugates of alpha*eps^a."""
    d = family.degree
    if not 1 <= h <= d:
        raise ValueError(f"h must lie in [1, {d}]")
    return (-1) ** h * form_at(family, a).coeffs[h]


def is_admissible(family: TwistedFamily, a: int) -> bool:
    return min_poly(family.element(a)).degree == family.degree


def admissible_range(family: TwistedFamily, a_min: int, a_max: int) -> list[int]:
    if a_min > a_max:
        raise ValueError("a_min must not exceed a_max")
    return [a for a in range(a_min, a_max + 1) if is_admissible(family, a)]


def excluded_values(family: TwistedFamily, a_min: int, a_max: int) -> list[int]:
    """Values of a in the range where alpha*eps^a has degree < d."""
    keep = set(admissible_range(family, a_min, a_max))
    return [a for a in range(a_min, a_max + 1) if a not in keep]


def U_sequence(family: TwistedFamily, h: int, a_values: Iterable[int]) -> list[int]:
    return [coefficient_U(family, h, a) for a in a_values]


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int
    first_failure: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "first_failure": self.first_failure,
            **self.details,
        }


def check_Ud_recurrence(family: TwistedFamily, a_values: Iterable[int]) -> CheckReport:
    """U_d(a) = delta^nu U_d(a-1) on consecutive admissible a, and U_d(0) = N(alpha)."""
    d = family.degree
    factor = family.delta ** family.nu
    a_values = sorted(set(a_values))
    adm = [a for a in a_values if is_admissible(family, a)]
    checked = 0
    for prev, cur in zip(adm, adm[1:]):
        if cur != prev + 1:
            continue
        lhs = coefficient_U(family, d, cur)
        rhs = factor * coefficient_U(family, d, prev)
        checked += 1
        if lhs != rhs:
            return CheckReport("ud", False, checked, {"a": cur, "lhs": str(lhs), "rhs": str(rhs)})
    if 0 in adm:
        n_alpha = family.alpha.norm()
        checked += 1
        if Fraction(coefficient_U(family, d, 0)) != n_alpha:
            return CheckReport("ud", False, checked, {"a": 0, "U_d(0)": str(coefficient_U(family, d, 0)),
                                                      "norm_alpha": str(n_alpha)})
    return CheckReport("ud", True, checked, details={"delta": family.delta, "nu": family.nu})
