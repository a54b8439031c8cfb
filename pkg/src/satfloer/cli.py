"""Command-line entry point: ``satfloer compute|verify|render|rotation|corpus``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import SatFloerError
from .exactgeom import Rat2
from .harness import (
    CorpusEntry,
    _Context,
    check_rotation,
    default_corpus_path,
    evaluate_entry,
    rank_of,
    read_corpus,
    report_json,
    report_text,
    resolve_companion,
    resolve_pattern,
    run_corpus,
)
from .pairing import assemble, straighten_beta
from .svg import emit_svg
from .torus import MarkedTorus


def _point(text: str) -> Rat2:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two fractions, got {text!r}")
    try:
        return Rat2(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _torus(args) -> MarkedTorus | None:
    if args.w is None and args.z is None:
        return None
    d = MarkedTorus()
    try:
        return MarkedTorus(args.w or d.w, args.z or d.z)
    except ValueError as exc:
        raise SatFloerError(str(exc)) from exc


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args) -> int:
    P = resolve_pattern(args.pattern, _torus(args))
    K = resolve_companion(args.companion)
    diagram = assemble(P, K)
    if args.straighten:
        diagram = straighten_beta(diagram)
    r = rank_of(diagram, args.seed)
    info = {
        "pattern": args.pattern,
        "companion": args.companion,
        "straightened": args.straighten,
        "winding_number": P.winding_number,
        "window_k": diagram.window_k,
        "nudge": str(diagram.nudge),
        "initial_count": r.result.initial_count,
        "eliminated_bigons": len(r.result.log),
        **r.as_dict(),
    }
    if args.format == "json":
        sys.stdout.write(json.dumps(info, indent=2, sort_keys=True) + "\n")
    else:
        dims = " ".join(f"{a}:{d}" for a, d in sorted(r.dims.items()))
        poly = "n/a" if r.poly is None else " ".join(f"{c:+d}t^{a}" for a, c in sorted(r.poly.items()))
        sys.stdout.write(
            f"rank {r.rank}\ndims {dims}\nalexander {poly}\n"
            f"winding {P.winding_number}  k {diagram.window_k}  crossings {r.result.initial_count} -> {r.rank}\n"
        )
    if args.svg_out:
        Path(args.svg_out).write_text(emit_svg(r.result, "minimized", args.window))
    return 0


def _cmd_verify(args) -> int:
    ctx = _Context(None, args.seed, _torus(args))
    rep = evaluate_entry(CorpusEntry(args.pattern, args.companion), ctx)
    if args.format == "json":
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(report_text({"entries": [rep], "summary": {
            "entries": 1, "passed": int(not rep["failures"]), "failed": int(bool(rep["failures"]))}}))
    return 1 if rep["failures"] else 0


def _cmd_render(args) -> int:
    P = resolve_pattern(args.pattern, _torus(args))
    K = resolve_companion(args.companion)
    diagram = assemble(P, K)
    if args.straighten:
        diagram = straighten_beta(diagram)
    if args.stage == "raw":
        svg = emit_svg(diagram, "raw", args.window)
    else:
        svg = emit_svg(rank_of(diagram, args.seed).result, "minimized", args.window)
    _write(svg, args.svg_out)
    return 0


def _cmd_rotation(args) -> int:
    K = resolve_companion(args.companion)
    value = check_rotation(K, args.window or 1)
    ok = abs(value) == 1
    if args.format == "json":
        sys.stdout.write(json.dumps({"companion": args.companion, "rotation": value, "ok": ok}, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"rotation {value:+d} ({'ok' if ok else 'FAIL'})\n")
    return 0 if ok else 1


def _cmd_corpus(args) -> int:
    path = Path(args.file) if args.file else default_corpus_path()
    corpus = read_corpus(path)
    report = run_corpus(corpus, seed=args.seed, torus=_torus(args), jobs=args.jobs)
    text = report_json(report) if args.format == "json" else report_text(report)
    _write(text, args.out)
    if args.out and args.format == "json":
        sys.stdout.write(report_text(report))
    return 1 if report["summary"]["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="satfloer", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="shuffle the order of bigon eliminations")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--window", type=int, default=None,
                        help="columns of the cover to draw (render), or periods to close up (rotation)")
    common.add_argument("--svg-out", default=None, help="write an SVG picture to this file")
    common.add_argument("--w", type=_point, default=None, help="basepoint w as 'x y' (default 1/4 1/4)")
    common.add_argument("--z", type=_point, default=None, help="basepoint z as 'x y' (default 3/8 1/4)")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("compute", parents=[common], help="rank and Alexander gradings of P(K)")
    c.add_argument("pattern")
    c.add_argument("companion")
    c.add_argument("--straighten", action="store_true", help="replace beta by the straight line (rank of K)")
    c.set_defaults(func=_cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run every check on one pattern and companion")
    v.add_argument("pattern")
    v.add_argument("companion")
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("render", parents=[common], help="SVG picture of the pairing diagram")
    r.add_argument("pattern")
    r.add_argument("companion")
    r.add_argument("--stage", choices=("raw", "minimized"), default="minimized")
    r.add_argument("--straighten", action="store_true")
    r.set_defaults(func=_cmd_render)

    o = sub.add_parser("rotation", parents=[common], help="rotation number of a companion's wrapping curve")
    o.add_argument("companion")
    o.set_defaults(func=_cmd_rotation)

    k = sub.add_parser("corpus", parents=[common], help="verify every entry of a corpus file")
    k.add_argument("file", nargs="?", default=None, help="corpus file (default: the bundled corpus)")
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--out", default=None, help="write the report here instead of stdout")
    k.set_defaults(func=_cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SatFloerError as exc:
        sys.stderr.write(f"satfloer: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
