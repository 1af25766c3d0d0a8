"""The two explicit families: Bernstein-Hasse fields Q(omega), omega^(2n) = D^(2n) + c,
and Shanks' simplest cubic fields.

Closed-form predictors here are computed from integer Lucas-type sequences and
are independent of the characteristic-polynomial route in :mod:`forms`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import InvalidParameters, UnsupportedIndex
from .forms import BinaryForm, CheckReport, TwistedFamily, family_new, form_at
from .numfield import FieldElement, NumberField
from .polynomials import IntPolynomial
from .recurrences import LinearRecurrence, SequenceWindow


# -- Bernstein-Hasse ---------------------------------------------------------------

@dataclass(frozen=True)
class BernsteinHasseParams:
    D: int
    n: int
    c: int

    def __post_init__(self):
        if self.D < 1:
            raise InvalidParameters("D must be a positive integer")
        if self.n < 2:
            raise InvalidParameters("n must be >= 2")
        if self.c not in (-1, 1):
            raise InvalidParameters("c must be +-1")
        if self.D ** (2 * self.n) + self.c < 2:
            raise InvalidParameters("D^(2n) + c must be >= 2")

    @property
    def N(self) -> int:
        """omega^(2n) = (omega^n)^2."""
        return self.D ** (2 * self.n) + self.c

    @property
    def descriptor(self) -> str:
        return f"bh:D={self.D},n={self.n},c={self.c}"


def bh_build(p: BernsteinHasseParams) -> TwistedFamily:
    """alpha = D + omega, eps = D^n + omega^n in Q[X]/(X^(2n) - (D^(2n) + c))."""
    K = NumberField(IntPolynomial([-p.N] + [0] * (2 * p.n - 1) + [1]))
    omega = K.gen
    fam = family_new(K, p.D + omega, p.D ** p.n + omega ** p.n, label=p.descriptor)
    assert fam.delta == -p.c and fam.nu == p.n
    return fam


def _eps_power_pair(p: BernsteinHasseParams, a: int) -> tuple[int, int]:
    """(P, Q) with eps^a = P + Q omega^n, exact for every integer a."""
    Dn, N = p.D ** p.n, p.N
    if a >= 0:
        step = (Dn, 1)
    else:
        # eps^-1 = -c * epsbar = -c D^n + c omega^n
        step = (-p.c * Dn, p.c)
    P, Q = 1, 0
    for _ in range(abs(a)):
        P, Q = P * step[0] + Q * step[1] * N, P * step[1] + Q * step[0]
    return P, Q


def _neg_c_pow(c: int, k: int) -> int:
    return 1 if (c == -1 or k % 2 == 0) else -1


def bh_predict(p: BernsteinHasseParams, h: int, a: int) -> int:
    """Closed-form U_h(a) for h in {1, 2, 2n-1, 2n}."""
    n, D, c, N = p.n, p.D, p.c, p.N
    if h == 2 * n:
        return _neg_c_pow(c, n * a + 1)
    if h == 1:
        P, _ = _eps_power_pair(p, a)
        return n * D * 2 * P
    if h == 2 * n - 1:
        P, Q = _eps_power_pair(p, a)
        # eps^a + epsbar^a = 2P ;  omega^n (eps^a - epsbar^a) = 2 Q N
        inner = D ** n * 2 * P + (-1) ** (n - 1) * 2 * Q * N
        return _neg_c_pow(c, (n - 1) * a) * n * D ** (n - 1) * inner
    if h == 2:
        if n == 2:
            # 4 D^2 (-c)^a + epsbar eps^(2a) + eps epsbar^(2a) = ... + (-c)(eps^(2a-1) + epsbar^(2a-1))
            P, _ = _eps_power_pair(p, 2 * a - 1)
            return 4 * D * D * _neg_c_pow(c, a) + (-c) * 2 * P
        P, _ = _eps_power_pair(p, 2 * a)
        return n * n * D * D * _neg_c_pow(c, a) + n * (n - 1) // 2 * D * D * 2 * P
    raise UnsupportedIndex(f"no closed form for h={h} (supported: 1, 2, {2 * n - 1}, {2 * n})")


def bh_vw(p: BernsteinHasseParams, h: int, a: int) -> tuple[int, int]:
    """(V_h(a), w) where W_h(a) = w * omega^n, so U_h(a) = V_h(a) + w * (D^(2n) + c) for h < 2n."""
    n, D, c = p.n, p.D, p.c
    if not 0 <= h <= 2 * n:
        raise ValueError("h must lie in [0, 2n]")
    P, Q = _eps_power_pair(p, a)
    N = p.N

    def mul(x, y):
        return (x[0] * y[0] + x[1] * y[1] * N, x[0] * y[1] + x[1] * y[0])

    def power(x, k):
        out = (1, 0)
        for _ in range(k):
            out = mul(out, x)
        return out

    e, eb = (P, Q), (P, -Q)
    total = (0, 0)
    for i in range(max(0, h - n), min(n, h) + 1):
        j = h - i
        term = mul(power(e, i), power(eb, j))
        k = comb(n, i) * comb(n, j)
        total = (total[0] + k * term[0], total[1] + k * term[1])
    assert total[1] == 0
    V = D ** h * total[0]
    if h < n or h == 2 * n:
        return V, 0
    k = a * (2 * n - h)
    _, Qk = _eps_power_pair(p, k)
    # eps^k - epsbar^k = 2 Qk omega^n
    w = (-1) ** (n - 1) * _neg_c_pow(c, (h - n) * a) * comb(n, 2 * n - h) * D ** (h - n) * 2 * Qk
    return V, w


def _poly_mul(f: list, g: list) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_pow(f: list, k: int) -> list:
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, f)
    return out


def bh_factorization_check(p: BernsteinHasseParams, a: int, family: Optional[TwistedFamily] = None) -> CheckReport:
    """Expand ((X - eps^a D)^n - eps^(na) omega^n)((X - epsbar^a D)^n + epsbar^(na) omega^n) in Q(omega)."""
    fam = family or bh_build(p)
    K = fam.field
    omega = K.gen
    n, D = p.n, p.D
    eps = fam.eps
    bar = D ** n - omega ** n
    on = omega ** n
    ea, ba = eps ** a, bar ** a
    left = _poly_pow([-ea * D, K.one()], n)
    left[0] = left[0] - ea ** n * on
    right = _poly_pow([-ba * D, K.one()], n)
    right[0] = right[0] + ba ** n * on
    product = _poly_mul(left, right)
    form = form_at(fam, a)
    d = 2 * n
    for k, coef in enumerate(product):
        expected = form.coeffs[d - k]
        if coef != expected:
            return CheckReport("factorization", False, k + 1,
                               {"a": a, "power": k, "product": coef.to_json(), "form": str(expected)})
    return CheckReport("factorization", True, d + 1, details={"a": a})


def u2_display_adjudication(D: int, c: int) -> dict:
    """Which displayed value of U_2(1) at n = 2 matches exact computation."""
    p = BernsteinHasseParams(D, 2, c)
    truth = form_at(bh_build(p), 1).coeffs[2]  # U_2 = (+1) * c_2
    candidates = {"-6cD^6": -6 * c * D ** 6, "-6cD^2": -6 * c * D ** 2}
    matches = [k for k, v in candidates.items() if v == truth]
    return {"D": D, "c": c, "U_2(1)": truth, "matches": matches,
            "predictor": bh_predict(p, 2, 1), "predictor_agrees": bh_predict(p, 2, 1) == truth}


# -- Shanks simplest cubics -------------------------------------------------------------

@dataclass(frozen=True)
class ShanksParams:
    n: int
    b1: int = 0
    b2: int = 1
    c1: int = 1
    c2: int = 0

    def __post_init__(self):
        if self.b1 * self.c2 == self.b2 * self.c1:
            raise InvalidParameters("need b1*c2 != b2*c1")

    @property
    def descriptor(self) -> str:
        return f"shanks:n={self.n},b1={self.b1},b2={self.b2},c1={self.c1},c2={self.c2}"


def shanks_field(n: int) -> NumberField:
    """Q[X]/(X^3 - (n-1)X^2 - (n+2)X - 1); f(1) = -2n-1 and f(-1) = 1 never vanish."""
    return NumberField(IntPolynomial([-1, -(n + 2), -(n - 1), 1]))


def shanks_roots(K: NumberField) -> tuple[FieldElement, FieldElement, FieldElement]:
    lam = K.gen
    lam2 = -(lam + 1).inv()
    lam3 = -(lam + 1) / lam
    return lam, lam2, lam3


def shanks_build(p: ShanksParams) -> TwistedFamily:
    K = shanks_field(p.n)
    lam1, lam2, _ = shanks_roots(K)
    eps = lam1 ** p.b1 * lam2 ** p.b2
    alpha = lam1 ** p.c1 * lam2 ** p.c2
    return family_new(K, alpha, eps, label=p.descriptor)


def shanks_st(n: int, a_min: int, a_max: int) -> tuple[SequenceWindow, SequenceWindow]:
    """Integer windows (s_a), (t_a) on [a_min, a_max] from the initial triples and recurrences."""
    if a_min > a_max:
        raise ValueError("a_min must not exceed a_max")
    s = {0: n - 1, 1: -n - 2, 2: -n * n - n - 4}
    t = {0: -n - 2, 1: n - 1, 2: 3}
    for a in range(3, a_max + 1):
        s[a] = (n - 1) * s[a - 1] + (n + 2) * s[a - 2] + s[a - 3]
        t[a] = -(n + 2) * t[a - 1] - (n - 1) * t[a - 2] + t[a - 3]
    for a in range(-1, a_min - 1, -1):
        s[a] = s[a + 3] - (n - 1) * s[a + 2] - (n + 2) * s[a + 1]
        t[a] = t[a + 3] + (n + 2) * t[a + 2] + (n - 1) * t[a + 1]
    rng = range(a_min, a_max + 1)
    return SequenceWindow(a_min, tuple(s[a] for a in rng)), SequenceWindow(a_min, tuple(t[a] for a in rng))


def shanks_recurrences(n: int) -> tuple[LinearRecurrence, LinearRecurrence]:
    return (LinearRecurrence.from_coefficients([n - 1, n + 2, 1]),
            LinearRecurrence.from_coefficients([-(n + 2), -(n - 1), 1]))


def shanks_form(n: int, a: int) -> BinaryForm:
    """X^3 - s_a X^2 Y + t_a X Y^2 - Y^3."""
    s, t = shanks_st(n, min(a, 0), max(a, 0))
    return BinaryForm((1, -int(s[a]), int(t[a]), -1), a)


def shanks_t_by_trace(n: int, a: int) -> Fraction:
    """t_a = Tr(lambda_1^-1 lambda_2^-a), by exact field arithmetic."""
    K = shanks_field(n)
    lam1, lam2, _ = shanks_roots(K)
    return (lam1.inv() * lam2 ** (-a)).trace()


def shanks_s_by_trace(n: int, a: int) -> Fraction:
    K = shanks_field(n)
    lam1, lam2, _ = shanks_roots(K)
    return (lam1 * lam2 ** a).trace()


# -- descriptors ----------------------------------------------------------------------

_KV = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\[[^\]]*\]|[^,]+)\s*(?:,|$)")


def _parse_kv(body: str) -> dict:
    out, pos = {}, 0
    body = body.strip()
    while pos < len(body):
        m = _KV.match(body, pos)
        if not m:
            raise InvalidParameters(f"cannot parse descriptor near {body[pos:]!r}")
        out[m.group(1)] = m.group(2).strip()
        pos = m.end()
    return out


def _int(text: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", text):
        raise InvalidParameters(f"expected an integer literal, got {text!r}")
    return int(text)


_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def _rat_list(text: str) -> list[Fraction]:
    """'[1,-9/2,0]' -> Fractions; integer and p/q literals only."""
    inner = text.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise InvalidParameters(f"bad list literal {text!r}")
    items = [v.strip() for v in inner[1:-1].split(",")]
    if not items or not all(_RAT.fullmatch(v) for v in items):
        raise InvalidParameters(f"bad list literal {text!r}")
    try:
        return [Fraction(v) for v in items]
    except ZeroDivisionError as exc:
        raise InvalidParameters(f"zero denominator in {text!r}") from exc


def parse_descriptor(text: str) -> TwistedFamily:
    """Build a family from 'bh:D=..,n=..,c=..', 'shanks:n=..[,b1=..]' or
    'custom:poly=[..],alpha=[..],eps=[..]'.  Only integer/rational literals."""
    kind, _, body = text.partition(":")
    kv = _parse_kv(body)
    kind = kind.strip().lower()
    if kind == "bh":
        unknown = set(kv) - {"D", "n", "c"}
        if unknown or len(kv) != 3:
            raise InvalidParameters("bh descriptor needs exactly D, n, c")
        return bh_build(BernsteinHasseParams(_int(kv["D"]), _int(kv["n"]), _int(kv["c"])))
    if kind == "shanks":
        if "n" not in kv or set(kv) - {"n", "b1", "b2", "c1", "c2"}:
            raise InvalidParameters("shanks descriptor needs n and optional b1,b2,c1,c2")
        return shanks_build(ShanksParams(**{k: _int(v) for k, v in kv.items()}))
    if kind == "custom":
        if set(kv) != {"poly", "alpha", "eps"}:
            raise InvalidParameters("custom descriptor needs poly, alpha, eps")
        poly = _rat_list(kv["poly"])
        if any(c.denominator != 1 for c in poly):
            raise InvalidParameters("poly must have integer coefficients")
        K = NumberField(IntPolynomial(int(c) for c in poly))
        return family_new(K, K(_rat_list(kv["alpha"])), K(_rat_list(kv["eps"])), label=text)
    raise InvalidParameters(f"unknown family kind {kind!r}")


def bh_params_of(family: TwistedFamily) -> Optional[BernsteinHasseParams]:
    m = re.fullmatch(r"bh:D=(\d+),n=(\d+),c=(-?1)", family.label or "")
    return BernsteinHasseParams(int(m[1]), int(m[2]), int(m[3])) if m else None


def shanks_params_of(family: TwistedFamily) -> Optional[ShanksParams]:
    m = re.fullmatch(r"shanks:n=(-?\d+),b1=(-?\d+),b2=(-?\d+),c1=(-?\d+),c2=(-?\d+)", family.label or "")
    return ShanksParams(*(int(g) for g in m.groups())) if m else None
