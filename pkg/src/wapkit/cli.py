"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 budget exhausted
or a requested certainty not met.
"""

from __future__ import annotations

import argparse
import sys
import traceback
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .analysis import (
    BOUNDED,
    NONE_IN_BUDGET,
    WITNESS,
    balance_profile,
    joint_witness_search,
    prefix_frequency,
    wap_witness_search,
)
from .deciders import (
    MAX_CENSUS_K,
    MorphismMatrix,
    census_csv,
    decide_bounded_wap,
    decide_wap,
    enumerate_census,
)
from .errors import BudgetError, PreconditionError, WordError
from .graphic import StepVectors, discrepancy_profile, graphic_points, parse_rational, width
from .plotting import ascii_plot, figure_graphic, figure_profile, svg_plot
from .report import SCHEMA, render, write_atomic
from .subshift import EXHAUSTED, build_wap_orbit_point
from .words import (
    Morphism,
    WordStream,
    as_text,
    finite_stream,
    fixed_point_stream,
    named_word,
    periodic_stream,
    read_word,
    toeplitz_stream,
)

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
MAX_LISTED_POSITIONS = 2000


class CertaintyUnmet(Exception):
    """Raised after output is written, to turn into exit code 3."""


@dataclass
class WordSpec:
    text: str
    stream: WordStream
    morphism: Morphism | None = None
    start: int | None = None


def parse_word_spec(text: str) -> WordSpec:
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise WordError(f"bad word spec {text!r}; expected kind:argument")
    if kind == "morphic":
        images, at, start = arg.partition("@")
        m = Morphism.parse(images)
        try:
            s = int(start) if at else 0
        except ValueError:
            raise WordError(f"bad start letter {start!r}") from None
        return WordSpec(text, fixed_point_stream(m, s), m, s)
    if kind == "toeplitz":
        return WordSpec(text, toeplitz_stream(arg))
    if kind == "named":
        return WordSpec(text, named_word(arg))
    if kind == "periodic":
        return WordSpec(text, periodic_stream(arg))
    if kind == "file":
        try:
            u = read_word(arg)
        except OSError as exc:
            raise WordError(f"cannot read {arg}: {exc.strerror}") from None
        return WordSpec(text, finite_stream(u, text))
    raise WordError(f"unknown word kind {kind!r}; use morphic, toeplitz, named, periodic or file")


def _emit(text: str | bytes, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
    else:
        sys.stdout.write(text)


def _positive(name):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v

    return conv


# --------------------------------------------------------------------------
# generate
# --------------------------------------------------------------------------


def run_generate(args) -> int:
    if args.prefix < 0:
        raise WordError("--prefix must be non-negative")
    spec = parse_word_spec(args.spec)
    _emit(as_text(spec.stream, args.prefix) + "\n", args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# analyze
# --------------------------------------------------------------------------


def _witness_entry(r) -> dict:
    pos = r.positions.tolist()
    return {
        "slope": r.slope,
        "level": r.level,
        "letter": r.letter,
        "hits": r.hits,
        "first_hit": r.first_hit,
        "last_hit": r.last_hit,
        "max_gap": r.max_gap,
        "verdict": r.verdict,
        "positions": pos[:MAX_LISTED_POSITIONS],
        "positions_truncated": len(pos) > MAX_LISTED_POSITIONS,
    }


def _joint_entry(r) -> dict:
    pos = r.positions.tolist()
    return {
        "frequencies": list(r.frequencies),
        "levels": list(r.levels),
        "hits": r.hits,
        "first_hit": r.first_hit,
        "last_hit": r.last_hit,
        "max_gap": r.max_gap,
        "verdict": WITNESS,
        "positions": pos[:MAX_LISTED_POSITIONS],
        "positions_truncated": len(pos) > MAX_LISTED_POSITIONS,
    }


def _exact_verdicts(spec: WordSpec) -> dict | None:
    m = spec.morphism
    if m is None or m.sigma != 2 or not m.uniform or m.k < 2:
        return None
    wap, cert = decide_wap(m, spec.start)
    bounded, reason = decide_bounded_wap(m, spec.start)
    return {
        "basis": "exact",
        "wap": "yes" if wap else "no",
        "bounded_wap": "yes" if bounded else "no",
        "bounded_wap_reason": reason,
        "certificates": [_certificate(cert)],
    }


def run_analyze(args) -> int:
    spec = parse_word_spec(args.spec)
    u = as_text(spec.stream, args.prefix)
    N = len(u)
    if N < 1:
        raise WordError("empty prefix")
    sigma = max(spec.stream.sigma, 2)
    freq = prefix_frequency(u, N)
    slopes = [parse_rational(args.slope)] if args.slope else None
    if slopes and not 0 <= slopes[0] <= 1:
        raise WordError("--slope must lie in [0, 1]")
    budgets = {
        "N": N,
        "Q": args.max_denominator,
        "H": args.min_hits,
        "G": args.max_gap if args.max_gap is not None else "10*q",
        "recency": not args.no_recency,
        "balance_window": min(args.balance_window, N),
    }
    if sigma == 2:
        found = wap_witness_search(
            u, N, args.max_denominator, args.min_hits, args.max_gap, not args.no_recency, slopes
        )
        witnesses = [_witness_entry(r) for r in found[: args.max_witnesses]]
        tag = BOUNDED if any(r.verdict == BOUNDED for r in found) else WITNESS if found else NONE_IN_BUDGET
    else:
        # several letters: a witness needs every letter on its own level at once
        found = joint_witness_search(u, N, args.max_denominator, args.min_hits, not args.no_recency)
        witnesses = [_joint_entry(r) for r in found[: args.max_witnesses]]
        tag = WITNESS if found else NONE_IN_BUDGET
        budgets["search"] = "joint"

    slope = slopes[0] if slopes else (found[0].slope if found and sigma == 2 else
                                      freq.ratios[0].limit_denominator(args.max_denominator))
    prof = discrepancy_profile(u, slope, N)
    bal = balance_profile(u, N, budgets["balance_window"])

    verdicts = _exact_verdicts(spec) or {"basis": "empirical", "wap": tag, "bounded_wap": tag if tag == BOUNDED else NONE_IN_BUDGET}
    verdicts["empirical"] = tag
    verdicts["witness_count"] = len(found)
    doc = {
        "schema": SCHEMA,
        "command": "analyze",
        "word_spec": spec.text,
        "prefix_length": N,
        "frequencies": {str(a): {"count": freq.counts[a], "ratio": freq.ratios[a]} for a in range(len(freq.counts))},
        "discrepancy": {"slope": slope, "min": prof.min, "max": prof.max, "width": width(prof).width},
        "witnesses": witnesses,
        "balance": {
            "window_max": budgets["balance_window"],
            "c_balance": bal.c_balance,
        },
        "verdicts": verdicts,
        "budgets": budgets,
    }
    _emit(render(doc, args.report), args.out)
    if args.figure:
        levels = sorted({w["level"] for w in witnesses if w.get("slope") == slope})
        figure_profile(prof, args.figure, levels, title=f"{spec.text}, N={N}")
    if args.require_witness and not found:
        raise CertaintyUnmet("no witness within budget")
    return EXIT_OK


# --------------------------------------------------------------------------
# decide and census
# --------------------------------------------------------------------------


def _certificate(cert) -> dict:
    d = {"start": cert.start, "condition": cert.condition, "verdict": "yes" if cert.verdict else "no", "delta": cert.delta}
    for key in ("A", "t", "j", "lhs"):
        val = getattr(cert, key)
        if val is not None:
            d[key] = val
    if cert.zero_at is not None:
        d["zero_at"] = list(cert.zero_at)
    return d


def run_decide(args) -> int:
    m = Morphism((args.img0, args.img1))
    wap, cert = decide_wap(m, args.start)
    bounded, reason = decide_bounded_wap(m, args.start)
    mx = MorphismMatrix.of(m)
    yn = "yes" if bounded else "no"
    doc = {
        "schema": SCHEMA,
        "command": "decide",
        "morphism": str(m),
        "start": args.start,
        "k": mx.k,
        "matrix": {"a": mx.a, "b": mx.b, "c": mx.c, "d": mx.d},
        "verdicts": {
            "wap": "yes" if wap else "no",
            "bounded_wap": yn,
            "abelian_periodic": yn,
            "image_condition": yn,
            "reason": reason,
        },
        "certificate": _certificate(cert),
    }
    _emit(render(doc, args.report), args.out)
    return EXIT_OK


def run_census(args) -> int:
    if not 2 <= args.length <= MAX_CENSUS_K:
        raise WordError(f"--length must be in 2..{MAX_CENSUS_K}")
    rows = enumerate_census(args.length, args.prefix, args.min_hits)
    _emit(census_csv(rows), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# orbit
# --------------------------------------------------------------------------


def run_orbit(args) -> int:
    spec = parse_word_spec(args.spec)
    target = parse_rational(args.target)
    doc = {"schema": SCHEMA, "command": "orbit", "word_spec": spec.text, "target": target}
    if args.irrational:
        doc["annotation"] = (
            "declared irrational uniform frequency: no point of the orbit closure is WAP; "
            "construction not attempted"
        )
        _emit(render(doc, args.report), args.out)
        return EXIT_OK
    res = build_wap_orbit_point(spec.stream, target, args.depth, args.budget)
    st = res.state
    doc.update(
        {
            "depth": st.depth,
            "depth_requested": st.depth_requested,
            "status": st.status,
            "levels": [
                {
                    "index": i + 1,
                    "length": len(lv.word),
                    "start": lv.start,
                    "parikh": list(lv.parikh),
                    "frequency": lv.frequency,
                    "relation": f"{lv.relation} {target.numerator}/{target.denominator}",
                }
                for i, lv in enumerate(st.levels)
            ],
            "word": res.word if len(res.word) <= 4096 else None,
            "witness": {"level": res.level, "hits": len(res.hit_positions), "positions": res.hit_positions},
            "budgets": {"N": st.N, "occurrences_scanned": st.occurrences_scanned},
        }
    )
    _emit(render(doc, args.report), args.out)
    if st.status == EXHAUSTED:
        raise CertaintyUnmet(f"budget exhausted at depth {st.depth} of {st.depth_requested}")
    return EXIT_OK


# --------------------------------------------------------------------------
# plot
# --------------------------------------------------------------------------


def run_plot(args) -> int:
    spec = parse_word_spec(args.spec)
    vectors = StepVectors.parse(args.vectors) if args.vectors else StepVectors.standard()
    if args.format == "svg" and args.prefix > 10**6:
        raise WordError("svg output is limited to --prefix 1000000")
    u = as_text(spec.stream, args.prefix)
    path = graphic_points(u, vectors)
    if args.format == "ascii":
        _emit(ascii_plot(path, args.width, args.height), args.out)
    elif args.format == "svg":
        _emit(svg_plot(path), args.out)
    elif args.format == "csv":
        rows = "".join(f"{x},{y}\n" for x, y in zip(path.xs.tolist(), path.ys.tolist()))
        _emit("n,y\n" + rows, args.out)
    else:
        if not args.out:
            raise WordError(f"--format {args.format} needs --out")
        figure_graphic(path, args.out, title=f"{spec.text}, N={len(u)}")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wapkit", description="Weak abelian periodicity of infinite words.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, prefix_default=None, report=True):
        sp.add_argument("--out", help="output file (written atomically); default stdout")
        if report:
            sp.add_argument("--report", choices=("json", "text"), default="json")

    g = sub.add_parser("generate", help="print a prefix of a word")
    g.add_argument("spec")
    g.add_argument("--prefix", type=int, default=100)
    common(g, report=False)
    g.set_defaults(func=run_generate)

    a = sub.add_parser("analyze", help="frequencies, discrepancy, balance and WAP witnesses")
    a.add_argument("spec")
    a.add_argument("--prefix", type=_positive("--prefix"), default=10000)
    a.add_argument("--slope", help="restrict the search to one slope p/q")
    a.add_argument("--max-denominator", type=_positive("--max-denominator"), default=8)
    a.add_argument("--min-hits", type=_positive("--min-hits"), default=50)
    a.add_argument("--max-gap", type=_positive("--max-gap"), help="bounded-witness gap bound (default 10*q)")
    a.add_argument("--no-recency", action="store_true", help="keep levels whose hits do not span the prefix")
    a.add_argument("--balance-window", type=_positive("--balance-window"), default=64)
    a.add_argument("--max-witnesses", type=_positive("--max-witnesses"), default=20)
    a.add_argument("--require-witness", action="store_true", help="exit 3 if no witness is found")
    a.add_argument("--figure", help="also draw the discrepancy to this image file")
    common(a)
    a.set_defaults(func=run_analyze)

    d = sub.add_parser("decide", help="exact verdicts for a binary uniform morphism")
    d.add_argument("img0")
    d.add_argument("img1")
    d.add_argument("--start", type=int, choices=(0, 1), default=0)
    common(d)
    d.set_defaults(func=run_decide)

    c = sub.add_parser("census", help="classify every binary k-uniform morphism prolongeable on 0")
    c.add_argument("--length", type=int, required=True)
    c.add_argument("--prefix", type=_positive("--prefix"), help="also cross-check empirically on this prefix")
    c.add_argument("--min-hits", type=_positive("--min-hits"), default=50)
    common(c, report=False)
    c.set_defaults(func=run_census)

    o = sub.add_parser("orbit", help="build a WAP point in the orbit closure from return words")
    o.add_argument("spec")
    o.add_argument("--target", required=True)
    o.add_argument("--depth", type=_positive("--depth"), default=4)
    o.add_argument("--budget", type=_positive("--budget"), default=100000)
    o.add_argument("--irrational", action="store_true", help="declare the word's uniform frequency irrational")
    common(o)
    o.set_defaults(func=run_orbit)

    pl = sub.add_parser("plot", help="draw the graphic of a prefix")
    pl.add_argument("spec")
    pl.add_argument("--prefix", type=int, default=64)
    pl.add_argument("--vectors", help="step vectors bx,by/cx,cy (default 1,-1/1,1)")
    pl.add_argument("--format", choices=("ascii", "svg", "csv", "png", "pdf"), default="ascii")
    pl.add_argument("--width", type=_positive("--width"), default=100)
    pl.add_argument("--height", type=_positive("--height"), default=30)
    common(pl, report=False)
    pl.set_defaults(func=run_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CertaintyUnmet as exc:
        print(f"wapkit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BudgetError as exc:
        print(f"wapkit: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WordError, PreconditionError) as exc:
        print(f"wapkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
