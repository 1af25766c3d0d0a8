"""Command line: ``thuetwist {form,coeffs,verify,search,siegel,lemma} ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from contextlib import contextmanager
from fractions import Fraction

from .errors import DegenerateDegree, InvalidParameters, ThueTwistError
from .families import parse_descriptor
from .forms import form_at
from .siegel import classify, lemma_fuzz, siegel_identity_check
from .solver import SearchBox, brute_force_search, kappa_report, pruned_search
from .suites import SUITES, U_value, run_suite


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """'3' or '-2..2' (inclusive)."""
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:\.\.\s*([+-]?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"bad range {text!r}; use A or LO..HI")
    lo = int(m[1])
    hi = int(m[2]) if m[2] is not None else lo
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3 or not all(re.fullmatch(r"\s*\d+\s*", p) for p in parts):
        raise UsageError("--triple needs three comma-separated indices")
    triple = tuple(int(p) for p in parts)
    if len(set(triple)) != 3:
        raise UsageError("--triple indices must be distinct")
    return triple


def parse_nu(text: str) -> Fraction:
    try:
        nu = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --nu {text!r}") from None
    if not 0 < nu < 1:
        raise UsageError("--nu must lie in (0, 1)")
    return nu


class Writer:
    """Single output sink; JSON lines or CSV rows."""

    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self._csv = csv.writer(stream, lineterminator="\n")

    def record(self, obj: dict, row=None):
        if self.fmt == "json":
            self.stream.write(json.dumps(obj) + "\n")
        elif row is not None:
            self._csv.writerow(row)

    def header(self, names):
        if self.fmt == "csv":
            self._csv.writerow(names)


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _notice(msg: str):
    print(msg, file=sys.stderr)


def cmd_form(args, out: Writer) -> int:
    fam = parse_descriptor(args.family)
    out.header(["a", "coeffs..."])
    for a in parse_range(args.a):
        try:
            f = form_at(fam, a)
        except DegenerateDegree as exc:
            _notice(f"a={a}: degenerate, alpha*eps^a has degree {exc.degree}")
            out.record({"a": a, "degenerate": True, "degree": exc.degree})
            continue
        out.record(f.to_dict(), f.to_csv_row().split(","))
    return 0


def cmd_coeffs(args, out: Writer) -> int:
    fam = parse_descriptor(args.family)
    d = fam.degree
    hs = [args.h] if args.h is not None else list(range(1, d + 1))
    if any(not 1 <= h <= d for h in hs):
        raise UsageError(f"--h must lie in [1, {d}]")
    out.header(["a"] + [f"U_{h}" for h in hs])
    for a in parse_range(args.a):
        vals = [U_value(fam, h, a) for h in hs]
        rec = {"a": a, "U": {str(h): str(v) for h, v in zip(hs, vals)}}
        out.record(rec, [a] + [str(v) for v in vals])
    return 0


def cmd_verify(args, out: Writer) -> int:
    fam = parse_descriptor(args.family)
    rep = run_suite(args.suite, fam, parse_range(args.a))
    out.header(["suite", "passed", "checked"])
    out.record(rep.to_dict(), [rep.name, rep.passed, rep.checked])
    return 0 if rep.passed else 1


def cmd_search(args, out: Writer) -> int:
    fam = parse_descriptor(args.family)
    rng = parse_range(args.a)
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    box = SearchBox(rng.start, rng.stop - 1, args.bound, args.m)
    prec = args.precision or 64
    results = {}
    if args.engine in ("oracle", "both"):
        results["oracle"] = brute_force_search(fam, box, workers=args.workers)
    if args.engine in ("pruned", "both"):
        results["pruned"] = pruned_search(fam, box, precision_bits=prec, workers=args.workers)
    chosen = results["pruned"] if "pruned" in results else results["oracle"]
    for a, deg in chosen.degenerate:
        _notice(f"a={a}: degenerate, alpha*eps^a has degree {deg}; skipped")
    if args.m < 2:
        _notice("m = 1: kappa ratio undefined (log m = 0)")
    out.header(["a", "x", "y", "value", "kappa"])
    for s in chosen.solutions:
        out.record(s.to_dict(), [s.a, s.x, s.y, s.value, "" if s.kappa_ratio is None else repr(s.kappa_ratio)])
    summary = kappa_report(chosen.solutions, args.m).to_dict()
    summary["degenerate"] = [{"a": a, "degree": deg} for a, deg in chosen.degenerate]
    summary["engine"] = args.engine
    agree = True
    if len(results) == 2:
        agree = results["oracle"].as_set() == results["pruned"].as_set()
        summary["engines_agree"] = agree
    if "pruned" in results and "fallback_band" in results["pruned"].stats:
        summary["fallback_band"] = {str(k): v for k, v in results["pruned"].stats["fallback_band"].items()}
    out.record(summary)
    if out.fmt == "csv":
        _notice(json.dumps(summary))
    return 0 if agree else 1


def cmd_siegel(args, out: Writer) -> int:
    fam = parse_descriptor(args.family)
    i1, i2, i3 = parse_triple(args.triple)
    if max(i1, i2, i3) >= fam.degree:
        raise UsageError(f"--triple indices must be < {fam.degree}")
    prec = args.precision or 128
    prof = classify(fam, args.a, args.x, args.y, parse_nu(args.nu), prec)
    res = siegel_identity_check(prof, i1, i2, i3)
    rec = prof.to_dict()
    rec["triple"] = [i1, i2, i3]
    rec["residual"] = res.to_dict()
    out.header(["a", "x", "y", "triple", "contains_zero", "width_log2"])
    out.record(rec, [args.a, args.x, args.y, f"{i1};{i2};{i3}", res.contains_zero, res.to_dict()["width_log2"]])
    return 0 if res.contains_zero else 1


def cmd_lemma(args, out: Writer) -> int:
    if args.t not in (4, 5, 6):
        raise UsageError("--t must be 4, 5 or 6")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    rep = lemma_fuzz(args.t, args.trials, args.seed)
    d = rep.to_dict()
    out.header(["t", "delta", "mu", "trials", "failures", "seed"])
    out.record(d, [d["t"], d["delta"], d["mu"], d["trials"], d["failures"], d["seed"]])
    return 0 if rep.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--precision", type=int, default=None, help="working precision in bits")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="thuetwist", description="Twisted Thue families: forms, checks, searches.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("form", parents=[common], help="binary forms F_a")
    p.add_argument("family")
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("coeffs", parents=[common], help="coefficient sequences U_h(a)")
    p.add_argument("family")
    p.add_argument("--a", required=True)
    p.add_argument("--h", type=int, default=None)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("family")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--a", default="-4..4")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="small solutions of |F_a(x, y)| <= m")
    p.add_argument("family")
    p.add_argument("--a", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--engine", choices=("oracle", "pruned", "both"), default="pruned")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("siegel", parents=[common], help="embedding profile and three-term identity")
    p.add_argument("family")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--triple", default="0,1,2")
    p.add_argument("--nu", default="1/2")
    p.set_defaults(func=cmd_siegel)

    p = sub.add_parser("lemma", parents=[common], help="fuzz the elementary sum lemma")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_lemma)
    return parser


def _glue_negative_values(argv):
    # argparse reads '--a -2..2' as two options; rewrite to '--a=-2..2'
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and re.match(r"-\d", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    if args.precision is not None and args.precision < 64:
        parser.exit(2, "thuetwist: error: --precision must be >= 64\n")
    buf = io.StringIO()
    try:
        code = args.func(args, Writer(buf, args.format))
    except (UsageError, InvalidParameters, ValueError) as exc:
        parser.exit(2, f"thuetwist: error: {exc}\n")
    except ThueTwistError as exc:
        parser.exit(1, f"thuetwist: {type(exc).__name__}: {exc}\n")
    with _open_out(args.out) as fh:
        fh.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
