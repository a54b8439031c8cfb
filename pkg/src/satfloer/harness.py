"""Batch verification: named references, the corpus runner and its report.

For every (pattern, companion) entry the runner computes three ranks:

* ``PK``  the satellite, from the pairing diagram,
* ``PU``  the pattern knot, pairing with the unknot's curve,
* ``K``   the companion, by straightening beta in the satellite diagram
  (and once more directly with the core pattern, as a cross-check).

It then checks ``PK >= PU`` and ``PK >= K``, odd parity, the rotation number
of the companion's wrapping component, the satellite formula for the
Alexander polynomial and, where it applies, the strict form ``PK > K``.
"""

from __future__ import annotations

import json
import re
import shlex
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .companions import (
    CompanionCurve,
    companion_from_raw,
    figure_eight_knot_companion,
    orient_thin,
    staircase_companion,
    torus_knot_companion,
    unknot_companion,
)
from .curvefile import read_curve_file
from .errors import InvalidSpec, NotUnit, ParseError
from .exactgeom import PLPath, Rat2
from .gradings import (
    absolute_alexander,
    alexander_polynomial,
    normalize_unit,
    polynomial_product,
    substitute_power,
)
from .pairing import MinPosResult, assemble, minimize, oriented_rightward, straighten_beta
from .patterns import (
    PatternTuple,
    cable_pattern,
    mazur_pattern,
    pattern_from_raw,
    pushed_pattern,
    unknot_pattern,
)
from .torus import CylinderCurve, MarkedTorus, TorusCurve, complete_and_rotation, torus_to_cylinder

# --------------------------------------------------------------------------
# references

_CABLE = re.compile(r"^cable\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_TORUS_KNOT = re.compile(r"^(-?)T2,(\d+)$")
_STAIRCASE = re.compile(r"^(-?)staircase\(([\d,\s]+)\)$")


def _looks_like_path(ref: str) -> bool:
    return "/" in ref or ref.endswith(".curve")


def resolve_pattern(ref: str, torus: MarkedTorus | None = None, base: Path | None = None) -> PatternTuple:
    """Build a pattern from a reference such as ``cable(2,3)``, ``mazur`` or a file path."""
    ref = ref.strip()
    if ref == "unknot":
        return unknot_pattern(torus)
    if ref == "mazur":
        return mazur_pattern(torus)
    m = _CABLE.match(ref)
    if m:
        return cable_pattern(int(m.group(1)), int(m.group(2)), torus)
    if ref.startswith("push:"):
        return pushed_pattern(ref[5:], torus)
    if _looks_like_path(ref):
        f = read_curve_file(_locate(ref, base))
        if f.kind != "pattern" or len(f.components) != 1:
            raise ParseError(f"{f.source}: expected a pattern file with one component")
        return pattern_from_raw(f.components[0], torus or f.torus(), f.name)
    raise InvalidSpec(f"unknown pattern reference {ref!r}")


def resolve_companion(ref: str, base: Path | None = None) -> CompanionCurve:
    """Build a companion from ``U``, ``T2,q``, ``-T2,q``, ``staircase(1,1)``, ``4_1`` or a file path."""
    ref = ref.strip()
    if ref in ("U", "unknot"):
        return unknot_companion()
    if ref == "4_1":
        return figure_eight_knot_companion()
    m = _TORUS_KNOT.match(ref)
    if m:
        q = int(m.group(2))
        return torus_knot_companion(-q if m.group(1) else q)
    m = _STAIRCASE.match(ref)
    if m:
        steps = [int(s) for s in m.group(2).split(",") if s.strip()]
        return staircase_companion(steps, -1 if m.group(1) else 1, ref)
    if _looks_like_path(ref):
        return load_companion_file(_locate(ref, base))
    raise InvalidSpec(f"unknown companion reference {ref!r}")


def load_companion_file(path: Path) -> CompanionCurve:
    f = read_curve_file(path)
    if f.kind != "companion":
        raise ParseError(f"{f.source}: expected a companion file")
    model = f.header.get("model", "cylinder")
    if model == "cylinder":
        cyl = CylinderCurve(f.components)
    elif model == "torus":
        cyl = torus_to_cylinder(TorusCurve(f.components))
    else:
        raise ParseError(f"{f.source}: model must be cylinder or torus")
    comp = companion_from_raw(cyl, f.name)
    if f.header.get("orient") == "thin":
        comp = orient_thin(comp)
    return comp


def _locate(ref: str, base: Path | None) -> Path:
    if ref.startswith("builtin:"):
        return Path(str(resources.files("satfloer") / "data" / ref[len("builtin:"):]))
    p = Path(ref)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


# --------------------------------------------------------------------------
# rotation of the wrapping component


def wrapping_path(companion: CompanionCurve, periods: int = 1) -> PLPath:
    """An open lift of the wrapping component spanning ``periods`` periods.

    The path starts and ends at the midpoint of a rightward horizontal edge,
    as required for closing it up.  Closed components are ignored.
    """
    wrap = oriented_rightward(companion.torus.wrapping()[0])
    segs = wrap.segments()
    start = next((i for i, s in enumerate(segs) if s.a.y == s.b.y and s.b.x > s.a.x), None)
    if start is None:
        raise InvalidSpec("the wrapping component has no rightward horizontal edge")
    s = segs[start]
    mid = Rat2((s.a.x + s.b.x) / 2, s.a.y)
    n = len(wrap.vertices)
    pts = [mid]
    for k in range(1, n * periods + 1):
        q, r = divmod(start + k, n)
        pts.append(wrap.vertices[r] + wrap.translation.scale(q))
    pts.append(mid + wrap.translation.scale(periods))
    return PLPath(pts, closed=False)


def check_rotation(companion: CompanionCurve, periods: int = 1) -> int:
    """Rotation number of the closed-up wrapping component (expected to be +1 or -1)."""
    return complete_and_rotation(wrapping_path(companion, periods))


# --------------------------------------------------------------------------
# single computations


@dataclass
class RankResult:
    rank: int
    dims: dict[int, int]
    poly: dict[int, int] | None
    result: MinPosResult

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "dims": {str(a): d for a, d in sorted(self.dims.items())},
            "alexander": None if self.poly is None else {str(a): c for a, c in sorted(self.poly.items())},
        }


def rank_of(diagram, seed: int | None = None) -> RankResult:
    res = minimize(diagram, seed)
    graded = absolute_alexander(res)
    try:
        poly = alexander_polynomial(graded)
    except NotUnit:
        poly = None
    return RankResult(res.intersection_count, graded.dims(), poly, res)


def compute(pattern: PatternTuple, companion: CompanionCurve, seed: int | None = None) -> RankResult:
    return rank_of(assemble(pattern, companion), seed)


def trivial_wrapping(companion: CompanionCurve) -> bool:
    """True when the wrapping component is a straight horizontal circle."""
    wrap = companion.cylinder.wrapping()[0].canonical()
    return all(v.y == wrap.vertices[0].y for v in wrap.vertices)


def is_core(pattern: PatternTuple) -> bool:
    from .pairing import vertical_line

    try:
        return pattern.beta.canonical() == vertical_line(pattern.torus).canonical()
    except ValueError:
        return False


def satellite_formula_holds(pk: dict[int, int] | None, pu: dict[int, int] | None, k: dict[int, int] | None, n: int) -> bool:
    if pk is None or pu is None or k is None:
        return False
    expected = polynomial_product(pu, substitute_power(k, n)) if n else dict(pu)
    return normalize_unit(pk) == normalize_unit(expected)


# --------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class Expected:
    total_dim: int | None
    dims: dict[int, int] | None
    provenance: str


@dataclass(frozen=True)
class CorpusEntry:
    pattern: str
    companion: str
    expected: Expected | None = None
    line: int = 0

    @property
    def label(self) -> str:
        return f"{self.pattern} | {self.companion}"


@dataclass
class Corpus:
    entries: list[CorpusEntry]
    base: Path | None = None
    source: str = "<corpus>"


def _parse_dims(text: str, where: str) -> dict[int, int]:
    out = {}
    try:
        for part in text.split(","):
            a, d = part.split(":")
            out[int(a)] = int(d)
    except ValueError as exc:
        raise ParseError(f"{where}: bad dims {text!r}") from exc
    return out


def parse_corpus_text(text: str, source: str = "<corpus>", base: Path | None = None) -> Corpus:
    """One entry per line: ``entry PATTERN COMPANION [expect=N] [dims=a:d,...] [source="..."]``."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        try:
            toks = shlex.split(line, comments=True)
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from exc
        if not toks:
            continue
        if toks[0] != "entry" or len(toks) < 3:
            raise ParseError(f"{where}: expected 'entry PATTERN COMPANION [key=value ...]'")
        opts = {}
        for tok in toks[3:]:
            if "=" not in tok:
                raise ParseError(f"{where}: expected key=value, got {tok!r}")
            k, v = tok.split("=", 1)
            if k not in ("expect", "dims", "source"):
                raise ParseError(f"{where}: unknown key {k!r}")
            opts[k] = v
        expected = None
        if "expect" in opts or "dims" in opts:
            if not opts.get("source"):
                raise ParseError(f"{where}: expected values need a source=... provenance note")
            try:
                total = int(opts["expect"]) if "expect" in opts else None
            except ValueError as exc:
                raise ParseError(f"{where}: bad expect value") from exc
            dims = _parse_dims(opts["dims"], where) if "dims" in opts else None
            expected = Expected(total, dims, opts["source"])
        entries.append(CorpusEntry(toks[1], toks[2], expected, lineno))
    return Corpus(entries, base, source)


def read_corpus(path: str | Path) -> Corpus:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_corpus_text(text, str(path), path.parent)


def default_corpus_path() -> Path:
    return Path(str(resources.files("satfloer") / "data" / "default_corpus.txt"))


@dataclass
class _Context:
    base: Path | None
    seed: int | None
    torus: MarkedTorus | None
    patterns: dict = field(default_factory=dict)
    companions: dict = field(default_factory=dict)
    pu: dict = field(default_factory=dict)
    k_direct: dict = field(default_factory=dict)
    rotation: dict = field(default_factory=dict)

    def pattern(self, ref):
        if ref not in self.patterns:
            self.patterns[ref] = resolve_pattern(ref, self.torus, self.base)
        return self.patterns[ref]

    def companion(self, ref):
        if ref not in self.companions:
            self.companions[ref] = resolve_companion(ref, self.base)
        return self.companions[ref]


def evaluate_entry(entry: CorpusEntry, ctx: _Context) -> dict:
    failures: list[str] = []
    P = ctx.pattern(entry.pattern)
    K = ctx.companion(entry.companion)
    diagram = assemble(P, K)
    pk = rank_of(diagram, ctx.seed)
    if entry.pattern not in ctx.pu:
        ctx.pu[entry.pattern] = compute(P, unknot_companion(), ctx.seed)
    pu = ctx.pu[entry.pattern]
    k_straight = rank_of(straighten_beta(diagram), ctx.seed)
    if entry.companion not in ctx.k_direct:
        ctx.k_direct[entry.companion] = compute(unknot_pattern(P.torus), K, ctx.seed)
    k_direct = ctx.k_direct[entry.companion]
    if entry.companion not in ctx.rotation:
        ctx.rotation[entry.companion] = check_rotation(K)
    rot = ctx.rotation[entry.companion]

    ineq = {"pattern": pk.rank >= pu.rank, "companion": pk.rank >= k_straight.rank}
    if not ineq["pattern"]:
        failures.append(f"rank {pk.rank} of P(K) is below rank {pu.rank} of P(U)")
    if not ineq["companion"]:
        failures.append(f"rank {pk.rank} of P(K) is below rank {k_straight.rank} of K")
    routes = k_straight.rank == k_direct.rank and k_straight.dims == k_direct.dims
    if not routes:
        failures.append(f"companion rank differs between routes: {k_straight.rank} vs {k_direct.rank}")
    parity = all(r % 2 == 1 for r in (pk.rank, pu.rank, k_straight.rank))
    if not parity:
        failures.append("an even rank was found")
    if abs(rot) != 1:
        failures.append(f"rotation number {rot} is not +-1")
    delta = satellite_formula_holds(pk.poly, pu.poly, k_straight.poly, P.winding_number)
    if not delta:
        failures.append("Alexander polynomial does not satisfy the satellite formula")
    strict = None
    if K.cylinder.components != tuple(K.cylinder.wrapping()) and trivial_wrapping(K) and not is_core(P):
        strict = pk.rank > k_straight.rank
        if not strict:
            failures.append("expected a strict inequality for a companion with closed components")
    expected = None
    if entry.expected is not None:
        e = entry.expected
        ok = True
        if e.total_dim is not None and e.total_dim != pk.rank:
            ok = False
            failures.append(f"expected rank {e.total_dim} ({e.provenance}), got {pk.rank}")
        if e.dims is not None and e.dims != pk.dims:
            ok = False
            failures.append(f"expected dims {e.dims} ({e.provenance}), got {pk.dims}")
        expected = {
            "total_dim": e.total_dim,
            "dims": None if e.dims is None else {str(a): d for a, d in sorted(e.dims.items())},
            "provenance": e.provenance,
            "ok": ok,
        }
    report = {
        "entry": entry.label,
        "pattern": entry.pattern,
        "companion": entry.companion,
        "winding_number": P.winding_number,
        "dims": {"PK": pk.rank, "PU": pu.rank, "K": k_straight.rank, "K_direct": k_direct.rank},
        "graded": {"PK": pk.as_dict(), "PU": pu.as_dict(), "K": k_straight.as_dict()},
        "ineq": ineq,
        "routes_agree": routes,
        "parity": parity,
        "rotation": rot,
        "delta_check": delta,
        "strict": strict,
        "expected": expected,
        "failures": failures,
    }
    if failures:
        seed = "" if ctx.seed is None else f" --seed {ctx.seed}"
        report["reproduce"] = f"satfloer verify {shlex.quote(entry.pattern)} {shlex.quote(entry.companion)}{seed}"
    return report


def _run_chunk(args) -> list[dict]:
    entries, base, seed, torus = args
    ctx = _Context(base, seed, torus)
    return [evaluate_entry(e, ctx) for e in entries]


def run_corpus(
    corpus: Corpus | str | Path,
    seed: int | None = None,
    torus: MarkedTorus | None = None,
    jobs: int = 1,
) -> dict:
    """Evaluate every entry; the report is ordered like the corpus file."""
    if not isinstance(corpus, Corpus):
        corpus = read_corpus(corpus)
    if jobs > 1:
        # group by pattern so the cached P(U) is reused inside a worker
        groups: dict[str, list[CorpusEntry]] = {}
        for e in corpus.entries:
            groups.setdefault(e.pattern, []).append(e)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_run_chunk, [(g, corpus.base, seed, torus) for g in groups.values()])
            by_label = {r["entry"]: r for part in parts for r in part}
        results = [by_label[e.label] for e in corpus.entries]
    else:
        results = _run_chunk((corpus.entries, corpus.base, seed, torus))
    failed = [r["entry"] for r in results if r["failures"]]
    return {
        "corpus": corpus.source,
        "seed": seed,
        "summary": {"entries": len(results), "passed": len(results) - len(failed), "failed": len(failed)},
        "failed_entries": failed,
        "entries": results,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_text(report: dict) -> str:
    lines = []
    for r in report["entries"]:
        d = r["dims"]
        status = "ok" if not r["failures"] else "FAIL"
        lines.append(
            f"{status:4} {r['entry']:32} PK={d['PK']:<4} PU={d['PU']:<4} K={d['K']:<4} "
            f"rot={r['rotation']:+d} delta={'ok' if r['delta_check'] else 'bad'}"
        )
        for f in r["failures"]:
            lines.append(f"     - {f}")
        if "reproduce" in r:
            lines.append(f"     reproduce: {r['reproduce']}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['entries']} entries passed")
    return "\n".join(lines) + "\n"


__all__ = [
    "resolve_pattern",
    "resolve_companion",
    "load_companion_file",
    "wrapping_path",
    "check_rotation",
    "RankResult",
    "rank_of",
    "compute",
    "satellite_formula_holds",
    "Expected",
    "CorpusEntry",
    "Corpus",
    "parse_corpus_text",
    "read_corpus",
    "default_corpus_path",
    "evaluate_entry",
    "run_corpus",
    "report_json",
    "report_text",
]
