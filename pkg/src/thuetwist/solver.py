"""Enumeration of (a, x, y), xy != 0, with |F_a(x, y)| <= m inside a finite box.

Two engines must agree exactly: ``brute_force_search`` evaluates every point
of the box, ``pruned_search`` only tests x near theta*y for the roots theta of
F_a(X, 1).  The pruning is rigorous: if theta_i is the root nearest to x/y then
|x/y - theta_j| >= |theta_i - theta_j| / 2 for every other root, hence

    |x - theta_i y| <= m / (c_0 |y|^(d-1) prod_{j != i} |theta_i - theta_j| / 2).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .balls import isolate_roots_adaptive, sqrt_bounds
from .errors import DegenerateDegree
from .forms import BinaryForm, TwistedFamily, evaluate, form_at

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class SearchBox:
    a_min: int
    a_max: int
    xy_bound: int
    m: int

    def __post_init__(self):
        if self.a_min > self.a_max:
            raise ValueError("a_min must not exceed a_max")
        if self.xy_bound < 1:
            raise ValueError("xy_bound must be >= 1")
        if self.m < 1:
            raise ValueError("m must be >= 1")


def kappa_ratio(a: int, x: int, y: int, m: int) -> Optional[float]:
    """max(log|x|, log|y|, |a|) / log m, undefined (None) for m < 2."""
    if m < 2:
        return None
    return max(math.log(abs(x)), math.log(abs(y)), abs(a)) / math.log(m)


@dataclass(frozen=True)
class Solution:
    a: int
    x: int
    y: int
    value: int
    kappa_ratio: Optional[float] = None

    def key(self) -> tuple:
        return (self.a, self.y, self.x)

    def to_dict(self) -> dict:
        return {"a": self.a, "x": self.x, "y": self.y, "value": str(self.value), "kappa": self.kappa_ratio}


@dataclass
class SearchResult:
    solutions: list
    degenerate: list = field(default_factory=list)  # (a, actual degree)
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def as_set(self) -> set:
        return {(s.a, s.x, s.y, s.value) for s in self.solutions}


def _make_solution(a: int, x: int, y: int, value: int, m: int) -> Solution:
    assert x != 0 and y != 0 and abs(value) <= m
    return Solution(a, x, y, value, kappa_ratio(a, x, y, m))


def _forms_in_box(family: TwistedFamily, box: SearchBox):
    forms, degenerate = [], []
    for a in range(box.a_min, box.a_max + 1):
        try:
            forms.append(form_at(family, a))
        except DegenerateDegree as exc:
            degenerate.append((a, exc.degree))
    return forms, degenerate


def _brute_one(form: BinaryForm, bound: int, m: int) -> list:
    d = form.degree
    worst = sum(abs(c) for c in form.coeffs) * bound ** d
    xs = list(range(-bound, bound + 1))
    out = []
    if worst < _INT64_SAFE:
        xv = np.arange(-bound, bound + 1, dtype=np.int64)
        for y in range(-bound, bound + 1):
            if y == 0:
                continue
            acc = np.full_like(xv, form.coeffs[0])
            ypow = 1
            for c in form.coeffs[1:]:
                ypow *= y
                acc = acc * xv + c * ypow
            hits = np.nonzero(np.abs(acc) <= m)[0]
            for i in hits:
                x = int(xv[i])
                if x != 0:
                    out.append((x, y, evaluate(form, x, y)))
    else:
        for y in range(-bound, bound + 1):
            if y == 0:
                continue
            for x in xs:
                if x == 0:
                    continue
                v = evaluate(form, x, y)
                if abs(v) <= m:
                    out.append((x, y, v))
    return out


def _root_windows(form: BinaryForm, precision_bits: int):
    """Per root: (re_mid, im_mid, rad, lower bound of c0 * prod_{j != i} |theta_i - theta_j| / 2)."""
    roots = isolate_roots_adaptive(form.dehomogenize(), precision_bits)
    prec = roots[0].prec
    data = []
    for i, ri in enumerate(roots):
        prod = Fraction(form.coeffs[0])
        for j, rj in enumerate(roots):
            if j == i:
                continue
            d2 = (ri.re - rj.re) ** 2 + (ri.im - rj.im) ** 2
            lo = sqrt_bounds(d2, prec)[0] - ri.rad - rj.rad
            prod *= max(lo, Fraction(0)) / 2
        data.append((ri.re, ri.im, ri.rad, prod))
    return data


def _pruned_one(form: BinaryForm, bound: int, m: int, precision_bits: int):
    d = form.degree
    windows = _root_windows(form, precision_bits)
    out = []
    band = 0
    for y in range(-bound, bound + 1):
        if y == 0:
            continue
        ay = abs(y)
        cands: set = set()
        for re, im, rad, pi in windows:
            if pi <= 0:
                cands.update(range(-bound, bound + 1))
                band = max(band, ay)
                continue
            w = Fraction(m) / (ay ** (d - 1) * pi)
            if im != 0 and (abs(im) - rad) * ay > w:
                continue
            centre = re * y
            half = w + rad * ay
            lo = max(-bound, math.ceil(centre - half))
            hi = min(bound, math.floor(centre + half))
            if lo <= -bound and hi >= bound:
                band = max(band, ay)
            if lo <= hi:
                cands.update(range(lo, hi + 1))
        for x in sorted(cands):
            if x == 0:
                continue
            v = evaluate(form, x, y)
            if abs(v) <= m:
                out.append((x, y, v))
    return out, band


def _run(engine: str, form: BinaryForm, bound: int, m: int, precision_bits: int):
    if engine == "oracle":
        return _brute_one(form, bound, m), None
    return _pruned_one(form, bound, m, precision_bits)


def _search(engine: str, family: TwistedFamily, box: SearchBox, precision_bits: int, workers: int) -> SearchResult:
    forms, degenerate = _forms_in_box(family, box)
    args = [(engine, f, box.xy_bound, box.m, precision_bits) for f in forms]
    if workers > 1 and len(forms) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, *zip(*args)))
    else:
        results = [_run(*arg) for arg in args]
    sols = []
    bands = {}
    for form, (triples, band) in zip(forms, results):
        sols.extend(_make_solution(form.a, x, y, v, box.m) for x, y, v in triples)
        if band is not None:
            bands[form.a] = band
    sols.sort(key=Solution.key)
    stats = {"engine": engine, "forms": len(forms)}
    if bands:
        stats["fallback_band"] = bands
    return SearchResult(sols, degenerate, stats)


def brute_force_search(family: TwistedFamily, box: SearchBox, workers: int = 1) -> SearchResult:
    """Every solution in the box, by exhaustive exact evaluation, ordered by (a, y, x)."""
    return _search("oracle", family, box, 0, workers)


def pruned_search(family: TwistedFamily, box: SearchBox, precision_bits: int = 64, workers: int = 1) -> SearchResult:
    """Same output as brute_force_search, testing only x in certified root windows.

    ``stats['fallback_band']`` records, per a, the largest |y| at which some
    window still covered the whole x range.
    """
    return _search("pruned", family, box, precision_bits, workers)


@dataclass
class KappaReport:
    m: int
    ratios: list
    max_ratio: Optional[float]
    witness: Optional[Solution]

    @property
    def defined(self) -> bool:
        return self.m >= 2

    def to_dict(self) -> dict:
        return {
            "type": "summary",
            "m": self.m,
            "solutions": len(self.ratios),
            "kappa_defined": self.defined,
            "max_kappa": self.max_ratio,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def kappa_report(solutions, m: int) -> KappaReport:
    """Empirical max of max(log|x|, log|y|, |a|) / log m over the solutions (natural log)."""
    sols = list(solutions)
    if m < 2:
        return KappaReport(m, [None] * len(sols), None, None)
    ratios = [kappa_ratio(s.a, s.x, s.y, m) for s in sols]
    if not sols:
        return KappaReport(m, [], None, None)
    best = max(range(len(sols)), key=lambda i: (ratios[i], -i))
    return KappaReport(m, ratios, ratios[best], sols[best])


def solutions_to_jsonl(result: SearchResult, m: int) -> str:
    lines = [json.dumps(s.to_dict()) for s in result.solutions]
    summary = kappa_report(result.solutions, m).to_dict()
    summary["degenerate"] = [{"a": a, "degree": deg} for a, deg in result.degenerate]
    lines.append(json.dumps(summary))
    return "\n".join(lines) + "\n"
