"""(1,1)-patterns as a curve beta on the doubly-marked torus.

A pattern P in the solid torus is recorded by an embedded closed curve beta of
homology class (0, 1) on the boundary torus, together with the basepoints w and
z.  Forgetting z, every such beta is isotopic to the vertical line separating
w from z, so every pattern is obtained from that line by dragging z around a
loop in the torus punctured at w.  Dragging z across beta pushes a finger of
beta ahead of it; :func:`push_basepoint` carries this out exactly, and the
standard patterns below are fixed words in the two generating loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Sequence

from .errors import BasepointOnCurve, InvalidSpec, NotCoprime, NotEmbedded, WrongHomologyClass
from .exactgeom import Overlap, Rat2, Segment, intersect_segments
from .torus import CoverLoop, MarkedTorus


@dataclass(frozen=True)
class PatternTuple:
    """A validated pattern curve; ``beta`` is one period of an upward lift."""

    beta: CoverLoop
    torus: MarkedTorus
    winding_number: int
    name: str = "custom"


# --------------------------------------------------------------------------
# validation


def _lift_range(beta: CoverLoop) -> tuple[Fraction, Fraction]:
    xs = [p.x for p in beta.vertices]
    return min(xs), max(xs)


def _period_with_neighbours(beta: CoverLoop) -> list[tuple[Rat2, list[Segment]]]:
    """Segments of every translate of the lift that can meet the base period."""
    lo, hi = _lift_range(beta)
    width = ceil(hi - lo) + 1
    ys = [p.y for p in beta.vertices]
    height = ceil(max(ys) - min(ys)) + 2
    out = []
    for m in range(-width, width + 1):
        for n in range(-height, height + 1):
            shift = Rat2(m, n)
            out.append((shift, [Segment(s.a + shift, s.b + shift) for s in beta.segments()]))
    return out


def check_embedded(beta: CoverLoop) -> None:
    """Raise NotEmbedded unless the torus curve covered by ``beta`` is simple."""
    base = beta.segments()
    n = len(base)
    boxes = [(min(s.a.x, s.b.x), max(s.a.x, s.b.x), min(s.a.y, s.b.y), max(s.a.y, s.b.y)) for s in base]
    for shift, segs in _period_with_neighbours(beta):
        for j, t in enumerate(segs):
            tx0, tx1 = min(t.a.x, t.b.x), max(t.a.x, t.b.x)
            ty0, ty1 = min(t.a.y, t.b.y), max(t.a.y, t.b.y)
            for i, s in enumerate(base):
                x0, x1, y0, y1 = boxes[i]
                if tx1 < x0 or tx0 > x1 or ty1 < y0 or ty0 > y1:
                    continue
                same = shift == Rat2(0, 0)
                if same and i == j:
                    continue
                r = intersect_segments(s, t)
                if isinstance(r, Overlap):
                    raise NotEmbedded(f"overlapping segments near {s.a}")
                for h in r:
                    # consecutive segments of the period share an endpoint
                    if same and (j == (i + 1) % n and h.s == 1 and h.t == 0):
                        continue
                    if same and (i == (j + 1) % n and h.s == 0 and h.t == 1):
                        continue
                    if shift == Rat2(0, 1) and i == n - 1 and j == 0 and h.s == 1 and h.t == 0:
                        continue
                    if shift == Rat2(0, -1) and i == 0 and j == n - 1 and h.s == 0 and h.t == 1:
                        continue
                    raise NotEmbedded(f"self-intersection at {h.point}")


def _check_basepoints(beta: CoverLoop, torus: MarkedTorus) -> None:
    for s in beta.segments():
        x0, x1 = min(s.a.x, s.b.x), max(s.a.x, s.b.x)
        y0, y1 = min(s.a.y, s.b.y), max(s.a.y, s.b.y)
        for i in range(floor(x0) - 1, floor(x1) + 1):
            for j in range(floor(y0) - 1, floor(y1) + 1):
                for base in (torus.w, torus.z):
                    p = base + Rat2(i, j)
                    if s.contains(p):
                        raise BasepointOnCurve(f"beta passes through the basepoint lift {p}")


def winding_number(beta: CoverLoop, torus: MarkedTorus) -> int:
    """Algebraic count of beta crossing the short segment from w to z, over all lifts.

    Closing that segment up through the solid torus gives a meridian disk's
    worth of pattern strands, so the count is the pattern's winding number.
    """
    wz = Segment(torus.w, torus.z)
    total = 0
    for shift, segs in _period_with_neighbours(beta):
        for s in segs:
            r = intersect_segments(wz, s)
            if isinstance(r, Overlap):
                raise BasepointOnCurve("beta runs along the segment from w to z")
            for h in r:
                if h.t == 1:
                    continue  # counted as the start of the next segment
                if h.s in (0, 1):
                    raise BasepointOnCurve("beta passes through a basepoint")
                total += 1 if wz.direction.cross(s.direction) > 0 else -1
    return total


def pattern_from_raw(beta: CoverLoop | Sequence[Rat2], torus: MarkedTorus | None = None, name: str = "custom") -> PatternTuple:
    """Validate raw pattern data.

    ``beta`` is either a :class:`CoverLoop` or a list of vertices of one period
    of an upward lift (the closing vertex is the first vertex moved up by one).
    """
    torus = torus or MarkedTorus()
    if not isinstance(beta, CoverLoop):
        beta = CoverLoop(list(beta), Rat2(0, 1))
    if beta.homology == (0, -1):
        beta = beta.reversed()
    if beta.homology != (0, 1):
        raise WrongHomologyClass(f"pattern curve has class {beta.homology}, expected (0, 1)")
    _check_basepoints(beta, torus)
    check_embedded(beta)
    return PatternTuple(beta, torus, winding_number(beta, torus), name)


# --------------------------------------------------------------------------
# dragging z around a loop


def _unit_left(d: Rat2) -> Rat2:
    if d.x == 0:
        return Rat2(-1 if d.y > 0 else 1, 0)
    return Rat2(0, 1 if d.x > 0 else -1)


def _unit(d: Rat2) -> Rat2:
    if d.x == 0:
        return Rat2(0, 1 if d.y > 0 else -1)
    return Rat2(1 if d.x > 0 else -1, 0)


@dataclass(frozen=True)
class _Hit:
    path_key: tuple[int, Fraction]
    beta_seg: int
    beta_t: Fraction
    shift: Rat2
    from_left: bool
    path_seg: int


def _wall(path: Sequence[Rat2], start: int, entry: Rat2, h: Fraction, side: int) -> list[Rat2]:
    """Offset of path[start..] at distance h on one side, beginning at ``entry``."""
    pts = [entry]
    for k in range(start + 1, len(path) - 1):
        d0 = _unit(path[k] - path[k - 1])
        d1 = _unit(path[k + 1] - path[k])
        if d0 == d1:
            continue
        n0, n1 = _unit_left(d0), _unit_left(d1)
        pts.append(path[k] + (n0 + n1).scale(h * side))
    dl = _unit(path[-1] - path[-2])
    pts.append(path[-1] + _unit_left(dl).scale(h * side) + dl.scale(h))
    return pts


def push_basepoint(beta: CoverLoop, path: Sequence[Rat2], eps: Fraction) -> CoverLoop:
    """Drag the basepoint at ``path[0]`` along an axis-parallel path, pushing beta ahead.

    ``path`` is a polyline in the plane whose segments are horizontal or
    vertical and whose end is a lift of its start, so it projects to a simple
    loop on the torus.  Each time the path crosses beta, beta grows a finger
    that follows the rest of the path and wraps around the final position of
    the basepoint; fingers created later enclose earlier ones, so the k-th
    finger has half-width k * eps.  No validation happens here.
    """
    path = list(path)
    segs = [Segment(a, b) for a, b in zip(path, path[1:])]
    xs = [p.x for p in path]
    ys = [p.y for p in path]
    blo, bhi = _lift_range(beta)
    period = beta.segments()
    nper = len(period)
    hits: list[_Hit] = []
    for m in range(floor(min(xs) - bhi) - 1, ceil(max(xs) - blo) + 2):
        for n in range(floor(min(ys)) - 2, ceil(max(ys)) + 2):
            shift = Rat2(m, n)
            for bi, bs in enumerate(period):
                s = Segment(bs.a + shift, bs.b + shift)
                for k, ps in enumerate(segs):
                    r = intersect_segments(ps, s)
                    if isinstance(r, Overlap):
                        raise NotEmbedded("push path runs along beta")
                    for h in r:
                        if h.t == 1:
                            continue
                        if h.t == 0 or h.s in (0, 1):
                            raise NotEmbedded(f"push path meets beta at a vertex {h.point}")
                        from_left = ps.direction.cross(s.direction) < 0
                        hits.append(_Hit((k, h.s), bi, h.t, shift, from_left, k))
    hits.sort(key=lambda x: x.path_key)
    inserts: dict[int, list[tuple[Fraction, list[Rat2]]]] = {}
    for rank, hit in enumerate(hits, start=1):
        h = eps * rank
        bs = period[hit.beta_seg]
        a, b = bs.a + hit.shift, bs.b + hit.shift
        k = hit.path_seg
        d = _unit(path[k + 1] - path[k])
        nl = _unit_left(d)

        def entry(side: int) -> Rat2:
            base = path[k] + nl.scale(h * side)
            u = d.cross(base - a) / d.cross(b - a)
            if not 0 < u < 1:
                raise NotEmbedded("finger does not fit on its beta segment")
            return a + (b - a).scale(u)

        first, second = (1, -1) if hit.from_left else (-1, 1)
        wall_in = _wall(path, k, entry(first), h, first)
        wall_out = _wall(path, k, entry(second), h, second)
        finger = wall_in + list(reversed(wall_out))
        finger = [p - hit.shift for p in finger]
        inserts.setdefault(hit.beta_seg, []).append((hit.beta_t, finger))
    verts: list[Rat2] = []
    for i, v in enumerate(beta.vertices):
        verts.append(v)
        for _, finger in sorted(inserts.get(i, []), key=lambda x: x[0]):
            verts.extend(finger)
    # a finger on the closing segment may start past the period's end
    return CoverLoop(verts, beta.translation).canonical()


# loops based at z: ``a`` runs once around horizontally above w, ``b``
# vertically.  The short first step of ``a`` keeps its two ends apart on the
# torus so that the loop is simple.
_LOOP_LIFT = Fraction(1, 8)
_LOOP_STEP = Fraction(1, 16)


def generator_path(letter: str, torus: MarkedTorus) -> list[Rat2]:
    z = torus.z
    c, d = _LOOP_LIFT, _LOOP_STEP
    if letter == "a":
        return [z, z + Rat2(d, 0), z + Rat2(d, c), z + Rat2(1, c), z + Rat2(1, 0)]
    if letter == "A":
        return [z, z + Rat2(0, c), z + Rat2(d - 1, c), z + Rat2(d - 1, 0), z + Rat2(-1, 0)]
    if letter == "b":
        return [z, z + Rat2(0, 1)]
    if letter == "B":
        return [z, z + Rat2(0, -1)]
    raise ValueError(f"unknown loop letter {letter!r}")


def pushed_pattern(word: str, torus: MarkedTorus | None = None, name: str | None = None) -> PatternTuple:
    """The pattern obtained from the vertical line by dragging z along ``word``.

    Letters are applied left to right; ``a``/``A`` go once around horizontally
    (above w) and ``b``/``B`` once around vertically.  Each new drag uses a
    finger width well below the smallest feature left by the previous one.
    """
    torus = torus or MarkedTorus()
    beta = unknot_pattern(torus).beta
    eps = Fraction(1, 64)
    for letter in word:
        path = generator_path(letter, torus)
        n = _count_crossings(beta, path)
        eps = eps / (2 * (n + 2))
        beta = push_basepoint(beta, path, eps)
    return pattern_from_raw(beta, torus, name or f"push:{word}")


def _count_crossings(beta: CoverLoop, path: Sequence[Rat2]) -> int:
    total = 0
    blo, bhi = _lift_range(beta)
    xs = [p.x for p in path]
    ys = [p.y for p in path]
    segs = [Segment(a, b) for a, b in zip(path, path[1:])]
    for m in range(floor(min(xs) - bhi) - 1, ceil(max(xs) - blo) + 2):
        for n in range(floor(min(ys)) - 2, ceil(max(ys)) + 2):
            shift = Rat2(m, n)
            for bs in beta.segments():
                s = Segment(bs.a + shift, bs.b + shift)
                for ps in segs:
                    r = intersect_segments(ps, s)
                    if not isinstance(r, Overlap):
                        total += sum(1 for h in r if h.t != 1)
    return total


# --------------------------------------------------------------------------
# standard patterns


def unknot_pattern(torus: MarkedTorus | None = None) -> PatternTuple:
    """The vertical line halfway between w and z; pairing with it recovers the companion."""
    torus = torus or MarkedTorus()
    x = (torus.w.x + torus.z.x) / 2
    beta = CoverLoop([Rat2(x, 0)], Rat2(0, 1))
    return PatternTuple(beta, torus, winding_number(beta, torus), "unknot")


# --------------------------------------------------------------------------
# twisting the solid torus along a meridian disk

_TWIST_BAND = (Fraction(1, 16), Fraction(1, 16))


def _twist_offset(x: Fraction, turns: int) -> Fraction:
    x0, width = _TWIST_BAND
    m = floor(x - x0)
    ramp = min(max((x - x0 - m) / width, Fraction(0)), Fraction(1))
    return turns * (m + ramp)


def twist_meridian(beta: CoverLoop, turns: int) -> CoverLoop:
    """Apply ``turns`` Dehn twists along a vertical circle to the pattern curve.

    The twist is the shear y -> y + turns * ramp(x) supported in a thin
    vertical band away from both basepoints; it is affine on the band, so
    segments are cut at the band edges and mapped vertex by vertex.
    """
    x0, width = _TWIST_BAND
    pts = list(beta.vertices) + [beta.vertices[0] + beta.translation]
    cut: list[Rat2] = [pts[0]]
    for a, b in zip(pts, pts[1:]):
        lo, hi = min(a.x, b.x), max(a.x, b.x)
        ts = []
        for edge in (x0, x0 + width):
            for m in range(floor(lo - edge), ceil(hi - edge) + 1):
                e = edge + m
                if lo < e < hi:
                    ts.append((e - a.x) / (b.x - a.x))
        for t in sorted(ts):
            cut.append(a + (b - a).scale(t))
        cut.append(b)
    mapped = [Rat2(p.x, p.y + _twist_offset(p.x, turns)) for p in cut]
    return CoverLoop(mapped[:-1], mapped[-1] - mapped[0]).canonical()


# --------------------------------------------------------------------------
# named families


def cable_word(p: int, r: int) -> str:
    """Push word of the (p, r) cable for 0 < r < p.

    The point z goes once around the horizontal loop for each of the p - 1
    extra strands, picking up a vertical loop whenever floor(i r / p) steps up.
    """
    word = []
    for i in range(1, p):
        word.append("B" * ((i * r) // p - ((i - 1) * r) // p))
        word.append("A")
    return "".join(word)


def cable_pattern(p: int, q: int, torus: MarkedTorus | None = None) -> PatternTuple:
    """The (p, q) cable: p strands, q / p turns around the meridian direction."""
    if p < 1:
        raise InvalidSpec("cables need at least one strand")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {gcd(p, q)}")
    torus = torus or MarkedTorus()
    r, turns = q % p, q // p
    # with one strand the cable is the core itself, twisted along the meridian
    base = pushed_pattern(cable_word(p, r), torus) if p > 1 else unknot_pattern(torus)
    beta = twist_meridian(base.beta, turns) if turns else base.beta
    check_embedded(beta)
    return PatternTuple(beta, torus, winding_number(beta, torus), f"cable({p},{q})")


def mazur_pattern(torus: MarkedTorus | None = None) -> PatternTuple:
    return pushed_pattern("aabAA", torus, name="mazur")
