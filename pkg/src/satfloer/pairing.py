"""Pairing diagrams, trivial-bigon elimination and minimal intersection counts.

The diagram lives on the torus; all work happens in the plane.  There the
companion's wrapping component lifts to a horizontally periodic curve alpha_0
and the pattern curve lifts to a vertically periodic curve beta_0.  Every
intersection point on the torus corresponds to exactly one point of
alpha_0 n beta_0, and every closed companion component C contributes the points
of (C + (m, 0)) n beta_0 over all integers m.

Each arc of an alpha lift between two consecutive crossings, together with
the piece of beta_0 joining its ends, is a loop in the plane punctured at the
lifts of w and z.  The arc bounds a trivial bigon (possibly immersed) exactly
when that loop is null-homotopic, which is decided by reducing its word in the
free group on the punctures (see :mod:`satfloer.words`).  Removing a trivial
bigon deletes its two corners and merges the neighbouring arcs, whose words
multiply.  The process is confluent, so the surviving count does not depend on
the elimination order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Sequence

from .errors import NonGenericInput, NotInnermost, NotTrivial
from .exactgeom import Overlap, Rat2, Segment, intersect_segments
from .torus import CoverLoop, MarkedTorus, TorusCurve
from .words import RaySystem, Word, choose_slope, multiply, inverse, reduce_word

HALF = Fraction(1, 2)


# --------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class PairingDiagram:
    """Companion curve alpha and pattern curve beta on the doubly-marked torus."""

    torus: MarkedTorus
    alpha: TorusCurve
    beta: CoverLoop
    pattern_name: str = "custom"
    companion_name: str = "custom"
    nudge: Fraction = Fraction(0)
    straightened: bool = False

    def __post_init__(self):
        if self.beta.homology not in ((0, 1), (0, -1)):
            raise ValueError("beta must be vertically periodic")
        for c in self.alpha.components:
            if not c.closed and c.homology not in ((1, 0), (-1, 0)):
                raise ValueError("alpha components must be closed or horizontally periodic")

    @cached_property
    def data(self) -> "CrossingData":
        return _compute_crossings(self)

    @property
    def window_k(self) -> int:
        """Number of unit columns met by beta_0 to the right of its base column.

        A horizontal edge [j-1, j] x {0} of the square grid is met by beta_0 for
        j = 1..k; the cover window used for the computation is [-1, k+1].
        """
        return self.data.k

    def initial_count(self) -> int:
        return len(self.data.crossings)


def oriented_rightward(c: CoverLoop) -> CoverLoop:
    if not c.closed and c.translation.x < 0:
        return c.reversed()
    return c


def oriented_upward(c: CoverLoop) -> CoverLoop:
    if c.translation.y < 0:
        return c.reversed()
    return c


def vertical_line(torus: MarkedTorus) -> CoverLoop:
    """The straight vertical curve with w on its left and z on its right."""
    if not torus.w.x < torus.z.x:
        raise ValueError("straightening needs w strictly left of z")
    x = (torus.w.x + torus.z.x) / 2
    return CoverLoop([Rat2(x, 0)], Rat2(0, 1))


def straighten_beta(diagram: PairingDiagram) -> PairingDiagram:
    """Replace beta by the vertical line separating w (left) from z (right).

    Forgetting z, every pattern curve is isotopic to this line through an
    isotopy that never crosses a lift of w, so the resulting count is the rank
    for the companion alone.
    """
    line = vertical_line(diagram.torus)
    if diagram.beta.canonical() == line.canonical():
        return diagram
    return replace(diagram, beta=line, straightened=True, pattern_name="vertical")


def _alpha_clear_of_basepoints(torus: MarkedTorus, alpha: TorusCurve) -> None:
    """Alpha must miss every segment joining a w-lift to its z-lift."""
    for c in alpha.components:
        for s in c.segments():
            x0, x1 = min(s.a.x, s.b.x), max(s.a.x, s.b.x)
            y0, y1 = min(s.a.y, s.b.y), max(s.a.y, s.b.y)
            for i in range(floor(x0) - 1, floor(x1) + 2):
                for j in range(floor(y0) - 1, floor(y1) + 2):
                    shift = Rat2(i, j)
                    wz = Segment(torus.w + shift, torus.z + shift)
                    r = intersect_segments(s, wz)
                    if isinstance(r, Overlap) or r:
                        raise NonGenericInput("alpha passes between w and z")


MAX_NUDGES = 12


def assemble(pattern, companion, max_nudges: int = MAX_NUDGES) -> PairingDiagram:
    """Pairing diagram of a pattern and a companion, in general position.

    The companion curve is used as placed by the grid map.  When a crossing
    would land on a vertex, or a ray system cannot be chosen, alpha is moved
    by d = 1/(3 * 2^m) both up and to the right, for m = 1, 2, ..., until both
    the diagram and its straightened version are generic.  The sideways part
    matters when a vertex of alpha sits on a vertical edge of beta.
    """
    torus = pattern.torus
    last: Exception | None = None
    for m in range(max_nudges + 1):
        dy = Fraction(0) if m == 0 else Fraction(1, 3 * 2**m)
        alpha = TorusCurve([c.translated(Rat2(dy, dy)) for c in companion.torus.components])
        d = PairingDiagram(torus, alpha, pattern.beta, pattern.name, companion.name, dy)
        try:
            _alpha_clear_of_basepoints(torus, alpha)
            d.data
            straighten_beta(d).data
        except NonGenericInput as exc:
            last = exc
            continue
        return d
    raise NonGenericInput(f"no generic position found after {max_nudges} nudges: {last}")


# --------------------------------------------------------------------------
# crossings


@dataclass(frozen=True)
class Crossing:
    index: int
    point: Rat2
    strand: int
    alpha_pos: tuple[int, Fraction]
    beta_pos: tuple[int, Fraction]
    sign: int
    height: int


@dataclass
class Strand:
    """One lift of an alpha component paired against beta_0."""

    component: int
    shift: int
    cyclic: bool
    crossings: list[int]
    words: list[Word]


@dataclass
class CrossingData:
    crossings: list[Crossing]
    strands: list[Strand]
    punctures: list[Rat2]
    w_letters: set[int]
    z_letters: set[int]
    slope: Fraction
    k: int
    closed_orientation: dict[int, int] = field(default_factory=dict)


class _Poly:
    """A finite polyline with per-segment bounding boxes for quick rejection."""

    def __init__(self, pts: Sequence[Rat2]):
        self.pts = list(pts)
        self.segs = [Segment(a, b) for a, b in zip(self.pts, self.pts[1:])]
        self.boxes = [
            (min(s.a.x, s.b.x), max(s.a.x, s.b.x), min(s.a.y, s.b.y), max(s.a.y, s.b.y)) for s in self.segs
        ]


def _intersections(pa: _Poly, pb: _Poly, cyclic_a: bool = False) -> list[tuple[int, Fraction, int, Fraction, Rat2]]:
    out = []
    order = sorted(range(len(pb.segs)), key=lambda j: pb.boxes[j][0])
    bmin = [pb.boxes[j][0] for j in order]
    from bisect import bisect_right

    for i, sa in enumerate(pa.segs):
        ax0, ax1, ay0, ay1 = pa.boxes[i]
        hi = bisect_right(bmin, ax1)
        for jj in range(hi):
            j = order[jj]
            bx0, bx1, by0, by1 = pb.boxes[j]
            if bx1 < ax0 or by1 < ay0 or by0 > ay1:
                continue
            r = intersect_segments(sa, pb.segs[j])
            if isinstance(r, Overlap):
                raise NonGenericInput("alpha and beta share a segment")
            for h in r:
                if h.s in (0, 1) or h.t in (0, 1):
                    raise NonGenericInput(f"crossing at a vertex: {h.point}")
                out.append((i, h.s, j, h.t, h.point))
    return out


def _beta_path(beta: CoverLoop, y_lo: Fraction, y_hi: Fraction) -> tuple[_Poly, int]:
    ys = [p.y for p in beta.vertices]
    first = floor(y_lo - max(ys)) - 1
    last = ceil(y_hi - min(ys)) + 1
    return _Poly(beta.unrolled(first, last).vertices), first


def _compute_crossings(d: PairingDiagram) -> CrossingData:
    beta = oriented_upward(d.beta)
    comps = [oriented_rightward(c) for c in d.alpha.components]
    bxs = [p.x for p in beta.vertices]
    bx0, bx1 = min(bxs), max(bxs)

    # alpha lifts: one unrolled piece for the wrapping component, and the
    # translates C + (m, 0) of every closed component that can reach beta_0
    alpha_polys: list[tuple[int, int, bool, _Poly]] = []
    ylo, yhi = None, None
    for ci, c in enumerate(comps):
        xs = [p.x for p in c.vertices]
        ys = [p.y for p in c.vertices]
        if c.closed:
            for m in range(floor(bx0 - max(xs)) - 1, ceil(bx1 - min(xs)) + 2):
                pts = [p + Rat2(m, 0) for p in c.vertices]
                alpha_polys.append((ci, m, True, _Poly(pts + [pts[0]])))
        else:
            first = floor(bx0 - max(xs)) - 1
            last = ceil(bx1 - min(xs)) + 1
            alpha_polys.append((ci, 0, False, _Poly(c.unrolled(first, last).vertices)))
        lo, hi = min(ys), max(ys)
        ylo = lo if ylo is None else min(ylo, lo)
        yhi = hi if yhi is None else max(yhi, hi)
    if ylo is None:
        ylo = yhi = Fraction(0)
    bpoly, _ = _beta_path(beta, ylo, yhi)

    raw = []
    for si, (ci, m, cyc, poly) in enumerate(alpha_polys):
        for (i, s, j, t, pt) in _intersections(poly, bpoly):
            raw.append((si, i, s, j, t, pt))

    # punctures: every lift of w and z near the curves involved
    all_pts = list(bpoly.pts) + [p for *_, poly in alpha_polys for p in poly.pts]
    X0 = floor(min(p.x for p in all_pts)) - 2
    X1 = ceil(max(p.x for p in all_pts)) + 2
    Y0 = floor(min(p.y for p in all_pts)) - 2
    Y1 = ceil(max(p.y for p in all_pts)) + 1
    ws, zs = d.torus.lifts(X0, X1, Y0, Y1)
    punctures = ws + zs
    for poly in [bpoly] + [a[3] for a in alpha_polys]:
        for s, (sx0, sx1, sy0, sy1) in zip(poly.segs, poly.boxes):
            for i in range(floor(sx0) - 1, floor(sx1) + 1):
                for j in range(floor(sy0) - 1, floor(sy1) + 1):
                    for base in (d.torus.w, d.torus.z):
                        p = base + Rat2(i, j)
                        if sx0 <= p.x <= sx1 and sy0 <= p.y <= sy1 and s.contains(p):
                            raise NonGenericInput(f"a curve runs through the basepoint lift {p}")
    slope = choose_slope(punctures, all_pts + [r[5] for r in raw])
    rays = RaySystem(punctures, slope)
    w_letters = set(range(1, len(ws) + 1))
    z_letters = set(range(len(ws) + 1, len(punctures) + 1))

    # Alexander heights along beta_0: signed crossings with the segments w -> z
    w0, z0 = d.torus.w, d.torus.z
    height_events: list[list[tuple[Fraction, int]]] = [[] for _ in bpoly.segs]
    for j, s in enumerate(bpoly.segs):
        sx0, sx1, sy0, sy1 = bpoly.boxes[j]
        for gi in range(floor(sx0) - 1, floor(sx1) + 1):
            for gj in range(floor(sy0) - 1, floor(sy1) + 1):
                shift = Rat2(gi, gj)
                seg = Segment(w0 + shift, z0 + shift)
                if not (sy0 <= seg.a.y <= sy1) or max(seg.a.x, seg.b.x) < sx0 or min(seg.a.x, seg.b.x) > sx1:
                    continue
                r = intersect_segments(s, seg)
                if isinstance(r, Overlap):
                    raise NonGenericInput("beta runs along the segment joining w and z")
                for h in r:
                    sign = 1 if seg.direction.cross(s.direction) > 0 else -1
                    height_events[j].append((h.s, sign))
    height_prefix = [0]
    for ev in height_events:
        height_prefix.append(height_prefix[-1] + sum(sg for _, sg in ev))

    def height_at(j: int, t: Fraction) -> int:
        return height_prefix[j] + sum(sg for u, sg in height_events[j] if u < t)

    # ray words along beta_0 (prefix words) and along each alpha lift
    beta_events = [rays.segment_crossings(s.a, s.b) for s in bpoly.segs]
    beta_prefix: list[Word] = [()]
    for ev in beta_events:
        beta_prefix.append(multiply(beta_prefix[-1], [l for _, l in ev]))

    def beta_word_to(j: int, t: Fraction) -> Word:
        return multiply(beta_prefix[j], [l for u, l in beta_events[j] if u < t])

    crossings: list[Crossing] = []
    by_strand: dict[int, list[int]] = {}
    for (si, i, s, j, t, pt) in raw:
        poly = alpha_polys[si][3]
        da = poly.segs[i].direction
        db = bpoly.segs[j].direction
        c = da.cross(db)
        idx = len(crossings)
        crossings.append(Crossing(idx, pt, si, (i, s), (j, t), 1 if c > 0 else -1, height_at(j, t)))
        by_strand.setdefault(si, []).append(idx)

    strands: list[Strand] = []
    for si, (ci, m, cyc, poly) in enumerate(alpha_polys):
        ids = sorted(by_strand.get(si, []), key=lambda k: crossings[k].alpha_pos)
        if not ids:
            continue
        seg_events = {}

        def alpha_word(p0, p1, poly=poly, seg_events=seg_events):
            (i0, t0), (i1, t1) = p0, p1
            letters = []
            i = i0
            n = len(poly.segs)
            while True:
                if i not in seg_events:
                    s = poly.segs[i]
                    seg_events[i] = rays.segment_crossings(s.a, s.b)
                lo = t0 if i == i0 else Fraction(0)
                last = i == i1 and (i != i0 or t1 > t0 or lo != t0)
                if i == i1 and (i != i0 or t1 > t0):
                    letters.extend(l for u, l in seg_events[i] if lo < u < t1)
                    break
                letters.extend(l for u, l in seg_events[i] if u > lo)
                i = (i + 1) % n if cyc else i + 1
                if not cyc and i >= n:
                    raise AssertionError("ran off the end of an alpha lift")
            return letters

        def loop_word(a, b):
            ca, cb = crossings[a], crossings[b]
            return multiply(
                beta_word_to(*ca.beta_pos),
                alpha_word(ca.alpha_pos, cb.alpha_pos),
                inverse(beta_word_to(*cb.beta_pos)),
            )

        if cyc:
            words = [loop_word(ids[k], ids[(k + 1) % len(ids)]) for k in range(len(ids))]
        else:
            words = [loop_word(ids[k], ids[k + 1]) for k in range(len(ids) - 1)]
        strands.append(Strand(ci, m, cyc, ids, words))
    # re-point crossings at the compact strand numbering
    remap = {}
    for new, st in enumerate(strands):
        for k in st.crossings:
            remap[k] = new
    crossings = [replace(c, strand=remap[c.index]) for c in crossings]

    # k: columns [j-1, j] x {0} met by beta_0, j >= 1, measured from its base column
    base = floor(beta.vertices[0].x)
    k = 0
    for s in bpoly.segs:
        if (s.a.y <= 0 <= s.b.y or s.b.y <= 0 <= s.a.y) and s.a.y != s.b.y:
            x = s.a.x + (s.b.x - s.a.x) * (0 - s.a.y) / (s.b.y - s.a.y)
            k = max(k, floor(x - base) + 1)
    return CrossingData(crossings, strands, punctures, w_letters, z_letters, slope, max(k, 1))


# --------------------------------------------------------------------------
# minimisation state


@dataclass(frozen=True)
class Bigon:
    strand: int
    position: int
    corners: tuple[int, int]
    points: tuple[Rat2, Rat2]
    side: int
    trivial: bool
    innermost: bool

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        a, b = self.points
        return (min(a.x, b.x), min(a.y, b.y))


@dataclass(frozen=True)
class Elimination:
    corners: tuple[int, int]
    points: tuple[Rat2, Rat2]


@dataclass
class MinState:
    diagram: PairingDiagram
    strands: list[Strand]
    log: list[Elimination] = field(default_factory=list)

    @classmethod
    def start(cls, diagram: PairingDiagram) -> "MinState":
        data = diagram.data
        strands = [Strand(s.component, s.shift, s.cyclic, list(s.crossings), list(s.words)) for s in data.strands]
        return cls(diagram, strands)

    def copy(self) -> "MinState":
        strands = [Strand(s.component, s.shift, s.cyclic, list(s.crossings), list(s.words)) for s in self.strands]
        return MinState(self.diagram, strands, list(self.log))

    def alive(self) -> list[int]:
        return sorted(k for s in self.strands for k in s.crossings)

    def count(self) -> int:
        return sum(len(s.crossings) for s in self.strands)


def _arc_interval(data: CrossingData, a: int, b: int):
    pa, pb = data.crossings[a].beta_pos, data.crossings[b].beta_pos
    return (pa, pb) if pa < pb else (pb, pa)


def find_trivial_bigons(state: "MinState | PairingDiagram") -> list[Bigon]:
    """All trivial bigons of the current configuration, tagged innermost or not.

    A bigon is an arc of an alpha lift between consecutive crossings with
    beta_0, closed up along beta_0; it is trivial when no basepoint lift is
    enclosed (its loop word is empty).  It is innermost when no other trivial
    bigon on the same side of beta_0 has both corners strictly inside its
    beta_0 interval.
    """
    if isinstance(state, PairingDiagram):
        state = MinState.start(state)
    data = state.diagram.data
    found = []
    for si, st in enumerate(state.strands):
        n = len(st.crossings)
        for pos, word in enumerate(st.words):
            if word:
                continue
            a, b = st.crossings[pos], st.crossings[(pos + 1) % n]
            if a == b:
                continue
            side = data.crossings[a].sign
            found.append((si, pos, a, b, side))
    intervals = [(_arc_interval(data, a, b), side, si, pos) for (si, pos, a, b, side) in found]
    out = []
    for (si, pos, a, b, side), (iv, _, _, _) in zip(found, intervals):
        inner = True
        for (iv2, side2, si2, pos2) in intervals:
            if (si2, pos2) == (si, pos) or side2 != side:
                continue
            if iv[0] < iv2[0] and iv2[1] < iv[1]:
                inner = False
                break
        pts = (data.crossings[a].point, data.crossings[b].point)
        out.append(Bigon(si, pos, (a, b), pts, side, True, inner))
    out.sort(key=lambda g: (g.key, g.corners))
    return out


def _bigon_at(state: MinState, bigon: Bigon) -> tuple[Strand, int]:
    st = state.strands[bigon.strand]
    n = len(st.crossings)
    pos = bigon.position
    if pos >= len(st.words) or (st.crossings[pos], st.crossings[(pos + 1) % n]) != bigon.corners:
        raise ValueError("bigon does not belong to this configuration")
    return st, pos


def eliminate_bigon(state: "MinState | PairingDiagram", bigon: Bigon) -> MinState:
    """Remove an innermost trivial bigon; returns a new state with two fewer crossings."""
    if isinstance(state, PairingDiagram):
        state = MinState.start(state)
    st, pos = _bigon_at(state, bigon)
    if st.words[pos]:
        raise NotTrivial("the bigon encloses a basepoint lift")
    current = {(g.strand, g.position): g for g in find_trivial_bigons(state)}
    g = current.get((bigon.strand, bigon.position))
    if g is None or not g.innermost:
        raise NotInnermost("another trivial bigon sits inside this one")
    new = state.copy()
    _remove_arc(new.strands[bigon.strand], pos)
    new.log.append(Elimination(bigon.corners, bigon.points))
    return new


def _remove_arc(st: Strand, pos: int) -> None:
    n = len(st.crossings)
    words = st.words
    if st.cyclic:
        if n == 2:
            st.crossings = []
            st.words = []
            return
        prev_w = words[(pos - 1) % n]
        next_w = words[(pos + 1) % n]
        merged = multiply(prev_w, next_w)
        # rotate so that the removed arc sits at position 1
        order = [(pos - 1 + i) % n for i in range(n)]
        cr = [st.crossings[i] for i in order]
        ws = [words[i] for i in order]
        # cr[1], cr[2] are removed; arcs ws[0], ws[1], ws[2] merge
        st.crossings = [cr[0]] + cr[3:]
        st.words = [merged] + ws[3:]
        return
    m = len(words)
    if pos == 0:
        st.crossings = st.crossings[2:]
        st.words = words[2:]
    elif pos == m - 1:
        st.crossings = st.crossings[:-2]
        st.words = words[:-2]
    else:
        merged = multiply(words[pos - 1], words[pos + 1])
        st.crossings = st.crossings[:pos] + st.crossings[pos + 2 :]
        st.words = words[: pos - 1] + [merged] + words[pos + 2 :]


@dataclass
class MinPosResult:
    diagram: PairingDiagram
    survivors: list[Crossing]
    log: list[Elimination]
    initial_count: int

    @property
    def intersection_count(self) -> int:
        return len(self.survivors)


def minimize(diagram: PairingDiagram, seed: int | None = None) -> MinPosResult:
    """Eliminate innermost trivial bigons until none is left.

    Without a seed the innermost bigon with the lexicographically smallest
    (min x, min y) corner key goes first; with a seed the choice among the
    innermost ones is random.
    """
    rng = random.Random(seed) if seed is not None else None
    state = MinState.start(diagram)
    start = state.count()
    while True:
        cands = [g for g in find_trivial_bigons(state) if g.innermost]
        if not cands:
            break
        g = rng.choice(cands) if rng else cands[0]
        before = state.count()
        st, pos = _bigon_at(state, g)
        _remove_arc(st, pos)
        state.log.append(Elimination(g.corners, g.points))
        assert state.count() == before - 2
    data = diagram.data
    survivors = [data.crossings[k] for k in state.alive()]
    return MinPosResult(diagram, survivors, state.log, start)
