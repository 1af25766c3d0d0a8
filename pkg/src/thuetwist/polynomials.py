"""Exact univariate polynomials over Z and Q.

Coefficients are stored in ascending order of degree.  ``IntPolynomial``
holds Python ints, ``RatPolynomial`` holds ``fractions.Fraction``.  Ring
operations between two integer polynomials stay integral; anything involving
a rational polynomial (or a division) produces a ``RatPolynomial``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _as_int(c) -> int:
    if isinstance(c, bool):
        raise TypeError("bool is not a polynomial coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, str):
        return int(c)
    raise TypeError(f"non-integer coefficient {c!r}")


def _as_fraction(c) -> Fraction:
    if isinstance(c, bool):
        raise TypeError("bool is not a polynomial coefficient")
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact; pass int, Fraction or str")
    return Fraction(c)


class _Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([self._coerce(c) for c in coeffs])

    @staticmethod
    def _coerce(c):  # pragma: no cover - overridden
        raise NotImplementedError

    # -- basic shape -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, _Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "X" if k == 1 else f"X^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ----------------------------------------------------------
    def _result_type(self, other):
        if isinstance(self, IntPolynomial) and isinstance(other, IntPolynomial):
            return IntPolynomial
        return RatPolynomial

    def _lift(self, other):
        if isinstance(other, _Polynomial):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial([other])
        if isinstance(other, Fraction):
            return RatPolynomial([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return self._result_type(o)([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return self._result_type(o)()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return self._result_type(o)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = type(self)([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return RatPolynomial(), RatPolynomial(rem)
        quo = [Fraction(0)] * (dq + 1)
        lead = Fraction(o.lc)
        for k in range(dq, -1, -1):
            q = rem[k + o.degree] / lead
            quo[k] = q
            if q:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= q * b
        return RatPolynomial(quo), RatPolynomial(rem[: o.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation and calculus ----------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return type(self)([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RatPolynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        lead = Fraction(self.lc)
        return RatPolynomial([Fraction(c) / lead for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == 1

    def reverse(self):
        """X^deg * p(1/X)."""
        return type(self)(reversed(self.coeffs))

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])


class IntPolynomial(_Polynomial):
    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return _as_int(c)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    @classmethod
    def from_json(cls, text: str) -> "IntPolynomial":
        return cls(int(c) for c in json.loads(text))


class RatPolynomial(_Polynomial):
    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return _as_fraction(c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)

    @classmethod
    def from_json(cls, text: str) -> "RatPolynomial":
        return cls(Fraction(c) for c in json.loads(text))


def to_rat(p: _Polynomial) -> RatPolynomial:
    return p if isinstance(p, RatPolynomial) else RatPolynomial(p.coeffs)


def poly_gcd(p: _Polynomial, q: _Polynomial) -> RatPolynomial:
    """Monic gcd over Q (the zero polynomial if both inputs vanish)."""
    a, b = to_rat(p), to_rat(q)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(p: _Polynomial, q: _Polynomial):
    """Return (g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = to_rat(p), to_rat(q)
    s0, s1 = RatPolynomial([1]), RatPolynomial()
    t0, t1 = RatPolynomial(), RatPolynomial([1])
    while not r1.is_zero():
        qq, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.lc
    return r0.monic(), s0 * (1 / lead), t0 * (1 / lead)


def squarefree_part(p: _Polynomial) -> RatPolynomial:
    """p / gcd(p, p'), made monic."""
    g = poly_gcd(p, p.derivative())
    return (to_rat(p) // g).monic()


def is_squarefree(p: _Polynomial) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def primitive_part(p: _Polynomial) -> IntPolynomial:
    """Clear denominators, remove content, make the leading coefficient positive."""
    if p.is_zero():
        return IntPolynomial()
    den = reduce(lambda x, y: x * y // math.gcd(x, y),
                 (Fraction(c).denominator for c in p.coeffs), 1)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(ints)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(p: _Polynomial) -> list[Fraction]:
    """All rational roots, by the exhaustive divisor test on a primitive model."""
    q = primitive_part(p)
    roots: set[Fraction] = set()
    coeffs = list(q.coeffs)
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return sorted(roots)
    q = IntPolynomial(coeffs)
    for num in _divisors(q[0]):
        for den in _divisors(q.lc):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def sturm_sequence(p: _Polynomial) -> list[RatPolynomial]:
    seq = [to_rat(p), to_rat(p.derivative())]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: _Polynomial) -> int:
    """Number of distinct real roots, exactly, by a Sturm sequence at +/- infinity."""
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    at_pos = [s.lc for s in seq]
    at_neg = [s.lc * (-1) ** s.degree for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by division of X^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = RatPolynomial([-1] + [0] * (n - 1) + [1])
    for k in range(1, n):
        if n % k == 0:
            num = num // cyclotomic(k)
    return num.to_int()


def cyclotomic_indices_of_degree(d: int) -> list[int]:
    """All n with phi(n) == d.  phi(n) >= sqrt(n/2), so n <= 2 d^2 suffices."""
    out = []
    for n in range(1, 2 * d * d + 3):
        if _euler_phi(n) == d:
            out.append(n)
    return out


def _euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def from_roots(roots: Sequence) -> list:
    """Coefficients (ascending) of prod (T - r) for ring elements supporting + and *."""
    coeffs = [1]
    for r in roots:
        new = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - r * c
        coeffs = new
    return coeffs
