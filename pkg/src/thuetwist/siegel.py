"""Embedding diagnostics for gamma = alpha*eps^a and beta = x - y*gamma.

Extremal embeddings and the sets Sigma/T are decided from certified balls.
Equal moduli that are forced by structure (a complex-conjugate pair, or a
rational element) are recognised exactly and reported as ties; anything the
balls cannot separate is reported as unresolved instead of being guessed.

Also hosts the elementary sum lemma: for real x_1..x_t summing to zero with
|x_i| <= delta * max(|x_1|, |x_2|) for i >= 3 and 0 < delta <= 1/(t-2) - 1/mu,
one has |x_1 + x_2| <= mu * delta * min(|x_1|, |x_2|).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .balls import CBall
from .forms import TwistedFamily, form_at
from .numfield import EmbeddingSet, FieldElement, embeddings, eval_all_embeddings


def _as_fraction(v) -> Fraction:
    # floats go through their shortest repr so 0.05 means 1/20
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def _nu_fraction(nu) -> Fraction:
    q = Fraction(nu).limit_denominator(10 ** 6) if isinstance(nu, float) else Fraction(nu)
    if not 0 < q < 1:
        raise ValueError("nu_param must lie in (0, 1)")
    return q


@dataclass(frozen=True)
class _Moduli:
    """Certified |phi(u)| bounds plus the structural equivalence classes of equal moduli."""

    lo: tuple
    hi: tuple
    classes: tuple  # tuple of frozensets of indices with provably equal modulus

    @classmethod
    def of(cls, u: FieldElement, balls: Sequence[CBall], emb: EmbeddingSet) -> "_Moduli":
        d = len(balls)
        if u.is_rational():
            q = abs(u.coords[0])
            return cls((q,) * d, (q,) * d, (frozenset(range(d)),))
        bounds = [b.abs_bounds() for b in balls]
        classes, seen = [], set()
        for i in range(d):
            if i in seen:
                continue
            cl = frozenset({i, emb.conjugate_index(i)})
            seen |= cl
            classes.append(cl)
        return cls(tuple(b[0] for b in bounds), tuple(b[1] for b in bounds), tuple(classes))

    def class_of(self, i: int) -> frozenset:
        return next(c for c in self.classes if i in c)

    def extremum(self, largest: bool):
        """(index, tied indices, unresolved indices) for the max (or min) modulus."""
        if largest:
            best = max(self.lo)
            cands = [i for i in range(len(self.lo)) if self.hi[i] >= best]
        else:
            best = min(self.hi)
            cands = [i for i in range(len(self.lo)) if self.lo[i] <= best]
        cand_classes = {self.class_of(i) for i in cands}
        if len(cand_classes) == 1:
            (cl,) = cand_classes
            return min(cl), sorted(cl), []
        key = (lambda i: (-self.hi[i], i)) if largest else (lambda i: (self.lo[i], i))
        idx = min(cands, key=key)
        return idx, sorted(self.class_of(idx)), sorted(cands)


def _pow_cmp_ge(a: Fraction, b: Fraction, nu: Fraction, a_exp_is_nu: bool) -> bool:
    """a >= b^nu (a_exp_is_nu False) or a^nu >= b (True), exactly, for a, b >= 0."""
    p, q = nu.numerator, nu.denominator
    if a_exp_is_nu:
        return a ** p >= b ** q
    return a ** q >= b ** p


@dataclass
class EmbeddingProfile:
    a: int
    x: int
    y: int
    precision_bits: int
    nu_param: Fraction
    values_gamma: list
    values_beta: list
    idx_sigma_alpha: int
    idx_tau_alpha: int
    idx_sigma_beta: int
    idx_tau_beta: int
    sets: dict
    ambiguous: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "x": str(self.x),
            "y": str(self.y),
            "nu": str(self.nu_param),
            "precision": self.precision_bits,
            "sigma_alpha": self.idx_sigma_alpha,
            "tau_alpha": self.idx_tau_alpha,
            "sigma_beta": self.idx_sigma_beta,
            "tau_beta": self.idx_tau_beta,
            **{k: v for k, v in self.sets.items()},
            "ambiguous": self.ambiguous,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _sets_for(mod: _Moduli, which: str, nu: Fraction, ambiguous: list):
    sigma, sig_ties, sig_unres = mod.extremum(True)
    tau, tau_ties, tau_unres = mod.extremum(False)
    for role, idx, ties, unres in (("sigma", sigma, sig_ties, sig_unres), ("tau", tau, tau_ties, tau_unres)):
        if unres:
            ambiguous.append({"which": f"{role}_{which}", "reason": "unresolved", "indices": unres})
        elif len(ties) > 1:
            ambiguous.append({"which": f"{role}_{which}", "reason": "tie", "indices": ties})

    d = len(mod.lo)
    big_lo, big_hi = max(mod.lo), max(mod.hi)
    small_lo, small_hi = min(mod.lo), min(mod.hi)
    sig_class = mod.class_of(sigma) if not sig_unres else frozenset()
    tau_class = mod.class_of(tau) if not tau_unres else frozenset()

    big_set, big_undecided = [], []
    small_set, small_undecided = [], []
    for i in range(d):
        # Sigma: |phi| >= H^nu, where H is the house
        if i in sig_class:
            verdict = True if big_lo >= 1 else (False if big_hi < 1 else None)
        elif _pow_cmp_ge(mod.lo[i], big_hi, nu, False):
            verdict = True
        elif not _pow_cmp_ge(mod.hi[i], big_lo, nu, False):
            verdict = False
        else:
            verdict = None
        if verdict:
            big_set.append(i)
        elif verdict is None:
            big_undecided.append(i)
        # T: |phi| <= m^nu, where m is the smallest modulus
        if i in tau_class:
            verdict = True if small_hi <= 1 else (False if small_lo > 1 else None)
        elif _pow_cmp_ge(small_lo, mod.hi[i], nu, True):
            verdict = True
        elif not _pow_cmp_ge(small_hi, mod.lo[i], nu, True):
            verdict = False
        else:
            verdict = None
        if verdict:
            small_set.append(i)
        elif verdict is None:
            small_undecided.append(i)
    if big_undecided:
        ambiguous.append({"which": f"Sigma_{which}", "reason": "unresolved", "indices": big_undecided})
    if small_undecided:
        ambiguous.append({"which": f"T_{which}", "reason": "unresolved", "indices": small_undecided})
    return sigma, tau, big_set, small_set


def classify(family: TwistedFamily, a: int, x: int, y: int, nu_param, precision_bits: int = 128) -> EmbeddingProfile:
    """Extremal embeddings and the sets Sigma/T for gamma = alpha*eps^a and beta = x - y*gamma.

    ``nu_param`` is the exponent in (0, 1) of the set definitions, unrelated to
    the family's ``nu``.  Set lists contain only certified members; undecided
    indices and ties are listed under ``ambiguous``.
    """
    nu = _nu_fraction(nu_param)
    form_at(family, a)  # raises DegenerateDegree for inadmissible a
    emb = embeddings(family.field, precision_bits)
    gamma = family.element(a)
    beta = x - y * gamma
    vg = eval_all_embeddings(gamma, emb)
    vb = eval_all_embeddings(beta, emb)
    ambiguous: list = []
    sa, ta, Sa, Ta = _sets_for(_Moduli.of(gamma, vg, emb), "alpha", nu, ambiguous)
    sb, tb, Sb, Tb = _sets_for(_Moduli.of(beta, vb, emb), "beta", nu, ambiguous)
    sets = {"Sigma_alpha": Sa, "Sigma_beta": Sb, "T_alpha": Ta, "T_beta": Tb}
    return EmbeddingProfile(a, x, y, precision_bits, nu, vg, vb, sa, ta, sb, tb, sets, ambiguous)


@dataclass(frozen=True)
class SiegelResidual:
    ball: CBall
    contains_zero: bool
    width: Fraction

    def to_dict(self) -> dict:
        return {
            "contains_zero": self.contains_zero,
            "width": float(self.width),
            "width_log2": None if self.width == 0 else _log2(self.width),
            "centre": [float(self.ball.re), float(self.ball.im)],
        }


def _log2(q: Fraction) -> float:
    return q.numerator.bit_length() - q.denominator.bit_length()


def siegel_identity_check(profile: EmbeddingProfile, i1: int, i2: int, i3: int) -> SiegelResidual:
    """Ball enclosure of u1 v2 - u1 v3 + u2 v3 - u2 v1 + u3 v1 - u3 v2, which is exactly 0."""
    d = len(profile.values_gamma)
    idx = (i1, i2, i3)
    if len(set(idx)) != 3:
        raise ValueError("embedding indices must be distinct")
    if any(not 0 <= i < d for i in idx):
        raise IndexError("embedding index out of range")
    u = [profile.values_gamma[i] for i in idx]
    v = [profile.values_beta[i] for i in idx]
    s = u[0] * v[1] - u[0] * v[2] + u[1] * v[2] - u[1] * v[0] + u[2] * v[0] - u[2] * v[1]
    return SiegelResidual(s, s.contains_zero(), s.width())


# -- elementary lemma -------------------------------------------------------


@dataclass(frozen=True)
class LemmaInstance:
    t: int
    xs: tuple
    delta: Fraction
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(_as_fraction(v) for v in self.xs))
        object.__setattr__(self, "delta", _as_fraction(self.delta))
        object.__setattr__(self, "mu", _as_fraction(self.mu))


@dataclass(frozen=True)
class Verdict:
    kind: str  # HypothesisFailed | ConclusionHolds | ConclusionFails
    which: Optional[str] = None

    def __bool__(self):
        return self.kind != "ConclusionFails"


def lemma_check(inst: LemmaInstance) -> Verdict:
    """Check the hypotheses exactly, then the conclusion |x1 + x2| <= mu*delta*min(|x1|, |x2|)."""
    t, xs, delta, mu = inst.t, inst.xs, inst.delta, inst.mu
    if t < 3:
        return Verdict("HypothesisFailed", "t>=3")
    if len(xs) != t:
        return Verdict("HypothesisFailed", "len(xs)==t")
    if not (delta > 0 and mu > 0):
        return Verdict("HypothesisFailed", "delta,mu>0")
    if delta > Fraction(1, t - 2) - 1 / mu:
        return Verdict("HypothesisFailed", "delta<=1/(t-2)-1/mu")
    if sum(xs) != 0:
        return Verdict("HypothesisFailed", "sum==0")
    big = max(abs(xs[0]), abs(xs[1]))
    for i in range(2, t):
        if abs(xs[i]) > delta * big:
            return Verdict("HypothesisFailed", f"|x_{i + 1}|<=delta*max")
    if abs(xs[0] + xs[1]) <= mu * delta * min(abs(xs[0]), abs(xs[1])):
        return Verdict("ConclusionHolds")
    return Verdict("ConclusionFails")


@dataclass
class FuzzReport:
    t: int
    delta: Fraction
    mu: Fraction
    trials: int
    failures: int
    seed: int
    rejected: int = 0
    first_failure: Optional[list] = None

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "delta": str(self.delta),
            "mu": str(self.mu),
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "rejected": self.rejected,
            "first_failure": self.first_failure,
        }


_GRID = 1 << 20


def _sample(rng: random.Random, t: int, delta: Fraction) -> Optional[tuple]:
    """One tuple in the hypothesis region, or None on rejection.

    The larger of x1, x2 is drawn first so the bound on the tail is known;
    the tail x3..x_t is drawn inside it (sometimes pinned to the boundary)
    and the other pair element is solved from the zero sum.
    """
    if rng.random() < 0.01:
        return (Fraction(0),) * t
    big = Fraction(rng.randint(1, _GRID), rng.randint(1, 64)) * rng.choice((1, -1))
    bound = delta * abs(big)
    tail = []
    for _ in range(t - 2):
        r = rng.random()
        if r < 0.15:
            tail.append(bound * rng.choice((1, -1)))
        else:
            tail.append(bound * Fraction(rng.randint(-_GRID, _GRID), _GRID))
    other = -big - sum(tail)
    if abs(other) > abs(big):
        return None
    pair = [big, other] if rng.random() < 0.5 else [other, big]
    return tuple(pair + tail)


def lemma_fuzz(t: int, trials: int, seed: int, delta=None, mu=None) -> FuzzReport:
    """Seeded random instances inside the hypotheses (mu = t, delta = 2/(t(t-2)) by default)."""
    if t not in (4, 5, 6):
        raise ValueError("t must be 4, 5 or 6")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    mu = Fraction(t) if mu is None else _as_fraction(mu)
    delta = Fraction(2, t * (t - 2)) if delta is None else _as_fraction(delta)
    rng = random.Random(seed)
    done = failures = rejected = 0
    first = None
    while done < trials:
        xs = _sample(rng, t, delta)
        if xs is None:
            rejected += 1
            continue
        verdict = lemma_check(LemmaInstance(t, xs, delta, mu))
        if verdict.kind == "HypothesisFailed":
            rejected += 1
            continue
        done += 1
        if verdict.kind == "ConclusionFails":
            failures += 1
            if first is None:
                first = [str(v) for v in xs]
    return FuzzReport(t, delta, mu, trials, failures, seed, rejected, first)
