"""Certified complex ball arithmetic on exact dyadic rationals, and root isolation.

A ``CBall`` is a disk ``{z : |z - (re + i*im)| <= rad}`` whose centre and
radius are ``Fraction`` values on a dyadic grid of ``prec`` fractional bits.
Every operation computes the exact centre, rounds it to the grid and folds
the rounding error into the radius, so enclosures are rigorous without
relying on floating point rounding modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PrecisionExhausted
from .polynomials import _Polynomial, count_real_roots, is_squarefree


def _round_down(q: Fraction, prec: int) -> Fraction:
    return Fraction(math.floor(q * (1 << prec)), 1 << prec)


def _round_up(q: Fraction, prec: int) -> Fraction:
    return Fraction(math.ceil(q * (1 << prec)), 1 << prec)


def sqrt_bounds(q: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Dyadic (lo, hi) with lo <= sqrt(q) <= hi and hi - lo = 2^-prec."""
    if q < 0:
        raise ValueError("sqrt of negative number")
    scaled = q * (1 << (2 * prec))
    s = math.isqrt(math.floor(scaled))
    return Fraction(s, 1 << prec), Fraction(s + 1, 1 << prec)


@dataclass(frozen=True)
class CBall:
    re: Fraction
    im: Fraction
    rad: Fraction
    prec: int

    @classmethod
    def exact(cls, value, prec: int) -> "CBall":
        """Enclose a rational (or Gaussian rational given as a pair)."""
        if isinstance(value, tuple):
            re, im = Fraction(value[0]), Fraction(value[1])
        else:
            re, im = Fraction(value), Fraction(0)
        return cls._make(re, im, Fraction(0), prec)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction, rad: Fraction, prec: int) -> "CBall":
        rre, rim = _round_down(re, prec), _round_down(im, prec)
        err = abs(re - rre) + abs(im - rim)
        return cls(rre, rim, _round_up(rad + err, prec), prec)

    # -- arithmetic ---------------------------------------------------------
    def _other(self, other) -> "CBall":
        if isinstance(other, CBall):
            return other
        return CBall.exact(other, self.prec)

    def __add__(self, other):
        o = self._other(other)
        return CBall._make(self.re + o.re, self.im + o.im, self.rad + o.rad,
                           max(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return CBall(-self.re, -self.im, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        o = self._other(other)
        prec = max(self.prec, o.prec)
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        rad = self.mid_abs_upper() * o.rad + o.mid_abs_upper() * self.rad + self.rad * o.rad
        return CBall._make(re, im, rad, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use explicit inversion for negative powers")
        result = CBall.exact(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CBall":
        return CBall(self.re, -self.im, self.rad, self.prec)

    # -- bounds --------------------------------------------------------------
    def mid_abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def mid_abs_upper(self) -> Fraction:
        if self.im == 0:
            return abs(self.re)
        return sqrt_bounds(self.mid_abs2(), self.prec)[1]

    def mid_abs_lower(self) -> Fraction:
        if self.im == 0:
            return abs(self.re)
        return sqrt_bounds(self.mid_abs2(), self.prec)[0]

    def abs_bounds(self) -> tuple[Fraction, Fraction]:
        """Certified (lo, hi) for |z| over the ball."""
        lo = self.mid_abs_lower() - self.rad
        return (lo if lo > 0 else Fraction(0)), self.mid_abs_upper() + self.rad

    def contains(self, value) -> bool:
        if isinstance(value, tuple):
            re, im = Fraction(value[0]), Fraction(value[1])
        else:
            re, im = Fraction(value), Fraction(0)
        return (self.re - re) ** 2 + (self.im - im) ** 2 <= self.rad ** 2

    def contains_zero(self) -> bool:
        return self.contains(0)

    def overlaps(self, other: "CBall") -> bool:
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 <= (self.rad + other.rad) ** 2

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def width(self) -> Fraction:
        return 2 * self.rad

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CBall({float(self.re):.17g}{float(self.im):+.17g}j ± {float(self.rad):.3g})"


def horner(coeffs, z: CBall) -> CBall:
    """Evaluate sum coeffs[k] z^k with rational coefficients over a ball."""
    acc = CBall.exact(0, z.prec)
    for c in reversed(list(coeffs)):
        acc = acc * z + CBall.exact(c, z.prec)
    return acc


# -- root isolation -------------------------------------------------------------

def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gauss_eval(coeffs, z):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _gauss_mul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _approximate_roots(p: _Polynomial, wp: int) -> list:
    with mpmath.workprec(wp):
        coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator) if isinstance(c, Fraction)
                  else mpmath.mpf(int(c)) for c in reversed(p.coeffs)]
        for steps in (100, 400, 1600):
            try:
                return list(mpmath.polyroots(coeffs, maxsteps=steps, extraprec=wp))
            except mpmath.libmp.NoConvergence:
                continue
    raise PrecisionExhausted(f"root approximation did not converge at {wp} bits")


def isolate_roots(p: _Polynomial, precision_bits: int) -> list[CBall]:
    """Certified disjoint disks, one per complex root of a squarefree p.

    Disks have radius below 2^-precision_bits.  Real roots get disks centred on
    the real axis; non-real roots come in exact conjugate pairs.  Ordering is by
    (real part, imaginary part) of the centres.

    Certification uses Gerschgorin's theorem on the matrix diag(z) - W 1^T,
    whose characteristic polynomial is p/lc(p) when W_i are the Weierstrass
    corrections p(z_i) / (lc * prod_{j != i}(z_i - z_j)).
    """
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    d = p.degree
    if d < 1:
        return []
    if not is_squarefree(p):
        raise ValueError("root isolation requires a squarefree polynomial")
    wp = 2 * precision_bits
    n_real = count_real_roots(p)
    approx = _approximate_roots(p, wp + 16)

    def dyadic(x):
        sign, man, exp, _ = x._mpf_
        q = Fraction(int(man)) * (Fraction(2) ** exp)
        return _round_down(-q if sign else q, wp)

    with mpmath.workprec(wp + 16):
        approx.sort(key=lambda z: abs(z.imag))
        real_part = [z.real for z in approx[:n_real]]
        upper = [z for z in approx[n_real:] if z.imag > 0]
        if len(upper) * 2 != d - n_real:
            raise PrecisionExhausted("could not pair non-real roots at working precision")
        centres = [(dyadic(x), Fraction(0)) for x in real_part]
        for z in upper:
            re, im = dyadic(z.real), dyadic(z.imag)
            centres.append((re, im))
            centres.append((re, -im))

    coeffs = [Fraction(c) for c in p.coeffs]
    lead2 = Fraction(p.lc) ** 2
    radii = []
    for i, zi in enumerate(centres):
        val = _gauss_eval(coeffs, zi)
        den = Fraction(1)
        for j, zj in enumerate(centres):
            if j != i:
                dz = (zi[0] - zj[0], zi[1] - zj[1])
                den *= dz[0] ** 2 + dz[1] ** 2
        if den == 0:
            raise PrecisionExhausted("coincident root approximations")
        w2 = (val[0] ** 2 + val[1] ** 2) / (lead2 * den)
        radii.append(_round_up(d * sqrt_bounds(w2, wp)[1], wp))

    balls = [CBall(re, im, r, wp) for (re, im), r in zip(centres, radii)]
    limit = Fraction(1, 1 << precision_bits)
    for i, b in enumerate(balls):
        if b.rad >= limit:
            raise PrecisionExhausted(f"root radius not below 2^-{precision_bits}")
        if b.im != 0 and abs(b.im) <= b.rad:
            raise PrecisionExhausted("cannot certify a root as non-real")
        for other in balls[i + 1:]:
            if b.overlaps(other):
                raise PrecisionExhausted("root disks overlap")
    balls.sort(key=lambda b: (b.re, b.im))
    return balls


def isolate_roots_adaptive(p: _Polynomial, precision_bits: int, max_bits: int = 8192) -> list[CBall]:
    """isolate_roots, doubling the precision on certification failure."""
    bits = precision_bits
    while True:
        try:
            return isolate_roots(p, bits)
        except PrecisionExhausted:
            bits *= 2
            if bits > max_bits:
                raise
