"""Exact arithmetic in K = Q[X]/(f) for a monic irreducible integer polynomial f.

Elements are power-basis coordinate vectors of rationals.  Characteristic and
minimal polynomials, trace and norm are computed exactly; complex embeddings
are certified disks from :mod:`thuetwist.balls`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .balls import CBall, horner, isolate_roots
from .errors import FieldMismatch, IrreducibilityFailed, NotMonic, NotSquarefree
from .polynomials import (
    IntPolynomial,
    RatPolynomial,
    count_real_roots,
    cyclotomic,
    cyclotomic_indices_of_degree,
    is_squarefree,
    poly_xgcd,
    primitive_part,
    rational_roots,
    squarefree_part,
)


def _passes_full_irreducibility(p: IntPolynomial) -> bool:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(p.coeffs)), x, domain="ZZ")
    return poly.is_irreducible


class NumberField:
    """K = Q(theta), theta a root of ``defining_poly``.

    Construction validates the polynomial: monic, degree >= 2, squarefree,
    no rational root, and irreducible over Q.
    """

    __slots__ = ("defining_poly", "degree", "_embedding_cache")

    def __init__(self, defining_poly):
        p = defining_poly if isinstance(defining_poly, IntPolynomial) else IntPolynomial(defining_poly)
        if p.degree < 2:
            raise ValueError("defining polynomial must have degree >= 2")
        if not p.is_monic():
            raise NotMonic(f"{p} is not monic")
        if not is_squarefree(p):
            raise NotSquarefree(f"{p} is not squarefree")
        if rational_roots(p):
            raise IrreducibilityFailed(f"{p} has a rational root")
        if not _passes_full_irreducibility(p):
            raise IrreducibilityFailed(f"{p} factors over Q")
        self.defining_poly = p
        self.degree = p.degree
        self._embedding_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(("NumberField", self.defining_poly))

    def __repr__(self):
        return f"NumberField({self.defining_poly})"

    # -- element constructors -----------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            coords = [Fraction(c) for c in value]
            if len(coords) > self.degree:
                return self.from_poly(RatPolynomial(coords))
            coords += [Fraction(0)] * (self.degree - len(coords))
            return FieldElement(self, tuple(coords))
        if isinstance(value, (RatPolynomial, IntPolynomial)):
            return self.from_poly(value)
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def from_poly(self, poly) -> "FieldElement":
        return FieldElement(self, _reduce(list(map(Fraction, poly.coeffs)), self.defining_poly))

    @property
    def gen(self) -> "FieldElement":
        return self([0, 1])

    def one(self) -> "FieldElement":
        return self(1)

    def zero(self) -> "FieldElement":
        return self(0)


def field_new(p) -> NumberField:
    return NumberField(p)


def _reduce(coeffs: list, p: IntPolynomial) -> tuple:
    d = p.degree
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            for i in range(d):
                coeffs[k - d + i] -= c * p.coeffs[i]
        coeffs[k] = 0
    coeffs = coeffs[:d] + [Fraction(0)] * (d - len(coeffs))
    return tuple(Fraction(c) for c in coeffs)


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise ValueError("coordinate vector length must equal the field degree")

    # -- coercion ------------------------------------------------------------
    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def as_poly(self) -> RatPolynomial:
        return RatPolynomial(self.coords)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        a, b = self.coords, o.coords
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, _reduce(prod, self.field.defining_poly))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(self.as_poly(), self.field.defining_poly)
        # f irreducible, so gcd(u, f) = 1
        return self.field.from_poly(s)

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __rtruediv__(self, other):
        return self._other(other) * self.inv()

    def __pow__(self, k: int):
        base = self
        if k < 0:
            base = self.inv()
            k = -k
        result = self.field.one()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"

    def to_json(self) -> str:
        return json.dumps([f"{c.numerator}/{c.denominator}" for c in self.coords])

    # -- invariants (thin wrappers over module functions) ------------------
    def charpoly(self) -> RatPolynomial:
        return charpoly(self)

    def min_poly(self) -> IntPolynomial:
        return min_poly(self)

    def trace(self) -> Fraction:
        return trace(self)

    def norm(self) -> Fraction:
        return norm(self)

    def degree(self) -> int:
        return min_poly(self).degree


def element_from_json(field: NumberField, text: str) -> FieldElement:
    return field([Fraction(c) for c in json.loads(text)])


def add(u: FieldElement, v: FieldElement) -> FieldElement:
    return u + v


def mul(u: FieldElement, v: FieldElement) -> FieldElement:
    return u * v


def inv(u: FieldElement) -> FieldElement:
    return u.inv()


def power(u: FieldElement, k: int) -> FieldElement:
    return u ** k


def mul_matrix(u: FieldElement) -> list[list[Fraction]]:
    """d x d matrix whose column j holds the coordinates of u * theta^j."""
    d = u.field.degree
    cols = []
    basis = u.field.one()
    gen = u.field.gen
    for _ in range(d):
        cols.append((u * basis).coords)
        basis = basis * gen
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _charpoly_matrix(m: Sequence[Sequence[Fraction]]) -> RatPolynomial:
    # Faddeev-LeVerrier: exact over Q
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        prod = [[sum(m[i][l] * mk[l][j] for l in range(n) if mk[l][j]) for j in range(n)]
                for i in range(n)]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        am = sum(sum(m[i][l] * mk[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -am / k
    return RatPolynomial(coeffs)


def charpoly(u: FieldElement) -> RatPolynomial:
    """prod over embeddings of (X - phi(u)), exactly."""
    return _charpoly_cached(u.field, u.coords)


@lru_cache(maxsize=4096)
def _charpoly_cached(field: NumberField, coords: tuple) -> RatPolynomial:
    return _charpoly_matrix(mul_matrix(FieldElement(field, coords)))


def min_poly(u: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial with positive leading coefficient."""
    return primitive_part(squarefree_part(charpoly(u)))


def trace(u: FieldElement) -> Fraction:
    m = mul_matrix(u)
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def norm(u: FieldElement) -> Fraction:
    return _det(mul_matrix(u))


@dataclass(frozen=True)
class EmbeddingSet:
    precision_bits: int
    roots: tuple  # CBall per embedding, sorted by (re, im)

    def __len__(self):
        return len(self.roots)

    def conjugate_index(self, i: int) -> int:
        """Index of the complex-conjugate embedding (i itself for real ones)."""
        r = self.roots[i]
        if r.im == 0:
            return i
        for j, s in enumerate(self.roots):
            if s.re == r.re and s.im == -r.im:
                return j
        raise AssertionError("unpaired complex root")

    def real_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roots) if r.im == 0]


def embeddings(field: NumberField, precision_bits: int = 64) -> EmbeddingSet:
    """Certified enclosures of the d complex roots of the defining polynomial."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    cached = field._embedding_cache.get(precision_bits)
    if cached is None:
        cached = EmbeddingSet(precision_bits, tuple(isolate_roots(field.defining_poly, precision_bits)))
        field._embedding_cache[precision_bits] = cached
    return cached


def eval_embedding(u: FieldElement, emb: EmbeddingSet, index: int) -> CBall:
    if not 0 <= index < len(emb.roots):
        raise IndexError("embedding index out of range")
    return horner(u.coords, emb.roots[index])


def eval_all_embeddings(u: FieldElement, emb: EmbeddingSet) -> list[CBall]:
    """All d embeddings, with conjugate pairs evaluated once and mirrored."""
    out: list = [None] * len(emb.roots)
    for i in range(len(emb.roots)):
        if out[i] is not None:
            continue
        out[i] = eval_embedding(u, emb, i)
        j = emb.conjugate_index(i)
        if j != i:
            out[j] = out[i].conjugate()
    return out


def house(u: FieldElement, emb: EmbeddingSet) -> tuple[Fraction, Fraction]:
    """Certified (lo, hi) enclosure of max |phi(u)|."""
    bounds = [b.abs_bounds() for b in eval_all_embeddings(u, emb)]
    return max(lo for lo, _ in bounds), max(hi for _, hi in bounds)


def is_totally_real(u: FieldElement) -> bool:
    f = min_poly(u)
    return count_real_roots(f) == f.degree


def is_algebraic_integer(u: FieldElement) -> bool:
    return min_poly(u).lc == 1


def is_unit(u: FieldElement) -> bool:
    f = min_poly(u)
    return f.lc == 1 and abs(f[0]) == 1


def is_root_of_unity(u: FieldElement) -> bool:
    """Exact: a root of unity has a cyclotomic minimal polynomial."""
    f = min_poly(u)
    if f.lc != 1 or abs(f[0]) != 1:
        return False
    return any(f == cyclotomic(n) for n in cyclotomic_indices_of_degree(f.degree))
