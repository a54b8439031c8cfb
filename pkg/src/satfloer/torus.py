"""The doubly-marked torus, its universal cover, and the cylinder grid map.

Coordinates.  The torus is R^2/Z^2 and the fundamental square [0,1]^2 is cut
into four quadrants.  Companion curves live away from the third quadrant
[0,1/2]^2, which holds the pattern basepoints w and z.

A curve component is stored as one period of a lift to the plane: an open
vertex list plus an integer translation vector.  The lift is the infinite
polyline ``v0, ..., v_{n-1}, v0 + T, ...``.  A zero translation means the
component is closed in the cover (and therefore null-homologous on the torus).

The cylinder model uses the same storage with translations in {0, (+-1, 0)}:
its punctures sit at (0, h + 1/2) (and their horizontal translates in the
unrolled picture).  :func:`grid_map` is a Z^2-equivariant piecewise-linear
homeomorphism of the plane that carries the small box around each puncture
onto a lift of the third quadrant and the puncture itself onto a lift of the
default w.  Cutting at the grid lines and replicating each piece in its square
is exactly what this map does to a curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

from .errors import BadHomology, DegeneratePath, PunctureCollision
from .exactgeom import PLPath, Rat2, Segment, intersect_segments, turning_number

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

DEFAULT_W = Rat2(QUARTER, QUARTER)
DEFAULT_Z = Rat2(Fraction(3, 8), QUARTER)

# half-width of the square around each cylinder puncture that the grid map
# blows up onto the third quadrant
PUNCTURE_RADIUS = Fraction(1, 8)


@dataclass(frozen=True)
class MarkedTorus:
    """Positions of the two basepoints inside the open third quadrant."""

    w: Rat2 = DEFAULT_W
    z: Rat2 = DEFAULT_Z

    def __post_init__(self):
        for name, p in (("w", self.w), ("z", self.z)):
            if not (0 < p.x < HALF and 0 < p.y < HALF):
                raise ValueError(f"{name}={p} must lie strictly inside the third quadrant")
        if self.w == self.z:
            raise ValueError("w and z must differ")

    def lifts(self, x0: int, x1: int, y0: int, y1: int) -> tuple[list[Rat2], list[Rat2]]:
        """Lifts of w and of z over the integer cell range [x0, x1] x [y0, y1]."""
        ws, zs = [], []
        for i in range(x0, x1 + 1):
            for j in range(y0, y1 + 1):
                v = Rat2(i, j)
                ws.append(self.w + v)
                zs.append(self.z + v)
        return ws, zs


@dataclass(frozen=True)
class CoverLoop:
    """One period of a lifted curve component plus its deck translation."""

    vertices: tuple[Rat2, ...]
    translation: Rat2 = Rat2(0, 0)

    def __init__(self, vertices: Iterable[Rat2], translation: Rat2 = Rat2(0, 0)):
        vs = tuple(vertices)
        if translation.x.denominator != 1 or translation.y.denominator != 1:
            raise ValueError("translation must be an integer vector")
        if len(vs) < 2 and translation == Rat2(0, 0):
            raise ValueError("a closed component needs at least two vertices")
        if not vs:
            raise ValueError("empty component")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive vertices must differ")
        if vs[-1] == vs[0] + translation:
            raise ValueError("the period's closing vertex is implicit")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "translation", translation)

    @property
    def closed(self) -> bool:
        return self.translation == Rat2(0, 0)

    @property
    def kind(self) -> str:
        return "closed" if self.closed else "periodic"

    @property
    def homology(self) -> tuple[int, int]:
        return int(self.translation.x), int(self.translation.y)

    def period_path(self) -> PLPath:
        """The period as an explicit path (closed when the translation is zero)."""
        if self.closed:
            return PLPath(self.vertices, closed=True)
        return PLPath(self.vertices + (self.vertices[0] + self.translation,))

    def segments(self) -> list[Segment]:
        return self.period_path().segments()

    def unrolled(self, first: int, last: int) -> PLPath:
        """Periods ``first..last`` (inclusive) of a periodic component as one path."""
        if self.closed:
            raise ValueError("closed components have no periods")
        pts: list[Rat2] = []
        for k in range(first, last + 1):
            shift = self.translation.scale(k)
            pts.extend(p + shift for p in self.vertices)
        pts.append(self.vertices[0] + self.translation.scale(last + 1))
        return PLPath(pts)

    def translated(self, v: Rat2) -> "CoverLoop":
        return CoverLoop(tuple(p + v for p in self.vertices), self.translation)

    def reversed(self) -> "CoverLoop":
        if self.closed:
            return CoverLoop(tuple(reversed(self.vertices)))
        end = self.vertices[0] + self.translation
        vs = (end,) + tuple(reversed(self.vertices[1:]))
        return CoverLoop(vs, -self.translation)

    def canonical(self) -> "CoverLoop":
        """Drop collinear pass-through vertices and rotate to a canonical start.

        Two components describe the same curve up to reparametrisation exactly
        when their canonical forms agree.
        """
        vs = list(self.vertices)
        t = self.translation
        n = len(vs)

        def at(i):
            q, r = divmod(i, n)
            return vs[r] + t.scale(q)

        keep = []
        for i in range(n):
            a, b, c = at(i - 1), at(i), at(i + 1)
            d1, d2 = b - a, c - b
            if d1.cross(d2) == 0 and d1.dot(d2) > 0:
                continue
            keep.append(i)
        if not keep:
            keep = [0]
        pts = [at(i) for i in keep]
        # reduce every vertex modulo the translation so the start is canonical
        if not self.closed:
            pts = [_reduce_mod(p, t) for p in pts]
            start = min(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))
            base = pts[start]
            m = len(pts)
            out = []
            for k in range(m):
                i = keep[(start + k) % m] + (n if start + k >= m else 0)
                out.append(at(i))
            shift = base - out[0]
            return CoverLoop(tuple(p + shift for p in out), t)
        start = min(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))
        return CoverLoop(tuple(pts[start:] + pts[:start]))


def _reduce_mod(p: Rat2, t: Rat2) -> Rat2:
    """Representative of p modulo the lattice line Z*t, chosen with 0 <= coordinate < 1 along t."""
    if t.x != 0:
        k = floor(p.x / t.x)
    else:
        k = floor(p.y / t.y)
    return p - t.scale(k)


@dataclass(frozen=True)
class TorusCurve:
    components: tuple[CoverLoop, ...]

    def __init__(self, components: Iterable[CoverLoop]):
        object.__setattr__(self, "components", tuple(components))

    def wrapping(self) -> list[CoverLoop]:
        return [c for c in self.components if not c.closed]

    def closed_components(self) -> list[CoverLoop]:
        return [c for c in self.components if c.closed]


@dataclass(frozen=True)
class CylinderCurve:
    """Immersed multicurve in the punctured cylinder, unrolled to the plane.

    ``puncture_heights`` lists the integers h whose punctures (0, h + 1/2) the
    curve is drawn around; it is bookkeeping for rendering and validation.
    """

    components: tuple[CoverLoop, ...]
    puncture_heights: tuple[int, ...] = ()

    def __init__(self, components: Iterable[CoverLoop], puncture_heights: Iterable[int] = ()):
        comps = tuple(components)
        for c in comps:
            if c.translation not in (Rat2(0, 0), Rat2(1, 0), Rat2(-1, 0)):
                raise BadHomology("cylinder components wrap horizontally at most once")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "puncture_heights", tuple(puncture_heights))

    def wrapping(self) -> list[CoverLoop]:
        return [c for c in self.components if not c.closed]


# --------------------------------------------------------------------------
# the grid map


def _f(x: Fraction) -> Fraction:
    """Cylinder x to torus x: [-r, r] -> [0, 1/2] and [r, 1-r] -> [1/2, 1]."""
    r = PUNCTURE_RADIUS
    k = floor(x + r)
    u = x - k  # in [-r, 1-r)
    if u <= r:
        return k + (u + r) / (4 * r)
    return k + HALF + (u - r) / (2 * (1 - 2 * r))


def _f_inv(X: Fraction) -> Fraction:
    r = PUNCTURE_RADIUS
    k = floor(X)
    u = X - k
    if u <= HALF:
        return k + u * 4 * r - r
    return k + r + (u - HALF) * 2 * (1 - 2 * r)


def _g(y: Fraction) -> Fraction:
    return _f(y - HALF)


def _g_inv(Y: Fraction) -> Fraction:
    return _f_inv(Y) + HALF


def grid_map(p: Rat2) -> Rat2:
    """Cylinder (unrolled) coordinates to torus-cover coordinates."""
    return Rat2(_f(p.x), _g(p.y))


def grid_map_inverse(p: Rat2) -> Rat2:
    return Rat2(_f_inv(p.x), _g_inv(p.y))


def _breaks(a: Fraction, b: Fraction, offsets: Sequence[Fraction]) -> list[Fraction]:
    """Values congruent to one of ``offsets`` modulo 1 strictly between a and b."""
    lo, hi = min(a, b), max(a, b)
    out = []
    for off in offsets:
        k = floor(lo - off) + 1
        while k + off < hi:
            out.append(k + off)
            k += 1
    return out


def _subdivide(points: Sequence[Rat2], xs: Sequence[Fraction], ys: Sequence[Fraction], closed_tail: Rat2 | None) -> list[Rat2]:
    """Insert the crossings of each segment with the grid lines x = xs (mod 1), y = ys (mod 1)."""
    seq = list(points) + ([closed_tail] if closed_tail is not None else [])
    out: list[Rat2] = []
    for a, b in zip(seq, seq[1:]):
        out.append(a)
        d = b - a
        ts = set()
        if d.x != 0:
            for X in _breaks(a.x, b.x, xs):
                ts.add((X - a.x) / d.x)
        if d.y != 0:
            for Y in _breaks(a.y, b.y, ys):
                ts.add((Y - a.y) / d.y)
        for t in sorted(ts):
            if 0 < t < 1:
                out.append(Rat2(a.x + d.x * t, a.y + d.y * t))
    return out


def _map_loop(c: CoverLoop, fn, xs, ys) -> CoverLoop:
    vs = list(c.vertices)
    tail = vs[0] + c.translation
    pts = _subdivide(vs, xs, ys, tail)
    mapped = [fn(p) for p in pts]
    # translations are preserved because the map is Z^2-equivariant
    return CoverLoop(mapped, c.translation)


def _puncture_box_hit(c: CoverLoop) -> Rat2 | None:
    """Return a point where the component meets a closed puncture box, if any."""
    r = PUNCTURE_RADIUS
    for s in c.segments():
        x0, y0 = min(s.a.x, s.b.x), min(s.a.y, s.b.y)
        x1, y1 = max(s.a.x, s.b.x), max(s.a.y, s.b.y)
        for kx in range(floor(x0 - r), floor(x1 + r) + 1):
            for ky in range(floor(y0 - HALF - r), floor(y1 - HALF + r) + 1):
                cx, cy = Fraction(kx), ky + HALF
                box = [Rat2(cx - r, cy - r), Rat2(cx + r, cy - r), Rat2(cx + r, cy + r), Rat2(cx - r, cy + r)]
                if _segment_meets_box(s, box):
                    return Rat2(cx, cy)
    return None


def _segment_meets_box(s: Segment, box: list[Rat2]) -> bool:
    lo, hi = box[0], box[2]
    for p in (s.a, s.b):
        if lo.x <= p.x <= hi.x and lo.y <= p.y <= hi.y:
            return True
    for i in range(4):
        edge = Segment(box[i], box[(i + 1) % 4])
        if intersect_segments(s, edge):
            return True
    return False


def cylinder_to_torus(c: CylinderCurve) -> TorusCurve:
    """Carry a cylinder curve to the torus by the grid construction.

    Raises PunctureCollision when a component enters the square of half-width
    1/8 around a puncture (in particular when it runs through a puncture).
    """
    r = PUNCTURE_RADIUS
    out = []
    for comp in c.components:
        hit = _puncture_box_hit(comp)
        if hit is not None:
            raise PunctureCollision(f"component passes within {r} of the puncture at {hit}")
        out.append(_map_loop(comp, grid_map, [-r, r], [HALF - r, HALF + r]))
    return TorusCurve(out)


def torus_to_cylinder(t: TorusCurve) -> CylinderCurve:
    """Inverse of :func:`cylinder_to_torus` for curves that avoid the third quadrant."""
    wraps = [c for c in t.components if not c.closed]
    if len(wraps) != 1 or wraps[0].homology not in ((1, 0), (-1, 0)):
        raise BadHomology("need exactly one component of homology (1,0) and the rest null-homologous")
    comps = [_map_loop(c, grid_map_inverse, [Fraction(0), HALF], [Fraction(0), HALF]) for c in t.components]
    heights: set[int] = set()
    for comp in comps:
        for p in comp.vertices:
            heights.add(floor(p.y - HALF))
            heights.add(floor(p.y - HALF) + 1)
    return CylinderCurve(comps, sorted(heights))


def simplify(curve: TorusCurve | CylinderCurve):
    """Canonical form of every component (used for equality up to reparametrisation)."""
    comps = [c.canonical() for c in curve.components]
    comps.sort(key=lambda c: (c.translation.x, c.translation.y, c.vertices))
    return comps


# --------------------------------------------------------------------------
# lifting


@dataclass(frozen=True)
class Window:
    """Closed rectangle [x0, x1] x [y0, y1] in the cover (integer corners)."""

    x0: int
    x1: int
    y0: int
    y1: int

    def shifted(self, dx: int, dy: int) -> "Window":
        return Window(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)


@dataclass(frozen=True)
class LiftPiece:
    component: int
    shift: tuple[int, int]
    path: PLPath


def _clip_polyline(pts: Sequence[Rat2], w: Window) -> list[list[Rat2]]:
    """Liang-Barsky style clipping of a polyline to a closed rectangle."""
    pieces: list[list[Rat2]] = []
    cur: list[Rat2] = []
    for a, b in zip(pts, pts[1:]):
        d = b - a
        t0, t1 = Fraction(0), Fraction(1)
        ok = True
        for p, q in ((-d.x, a.x - w.x0), (d.x, w.x1 - a.x), (-d.y, a.y - w.y0), (d.y, w.y1 - a.y)):
            if p == 0:
                if q < 0:
                    ok = False
                    break
                continue
            r = q / p
            if p < 0:
                t0 = max(t0, r)
            else:
                t1 = min(t1, r)
        if not ok or t0 > t1:
            if len(cur) >= 2:
                pieces.append(cur)
            cur = []
            continue
        pa, pb = a + d.scale(t0), a + d.scale(t1)
        if cur and cur[-1] == pa:
            if pb != pa:
                cur.append(pb)
        else:
            if len(cur) >= 2:
                pieces.append(cur)
            cur = [pa] if pa == pb else [pa, pb]
        if t1 < 1:
            if len(cur) >= 2:
                pieces.append(cur)
            cur = []
    if len(cur) >= 2:
        pieces.append(cur)
    return pieces


def lift_to_cover(curve: TorusCurve, window: Window) -> list[LiftPiece]:
    """All translates of all components meeting ``window``, clipped to it."""
    if window.x0 >= window.x1 or window.y0 >= window.y1:
        raise ValueError("empty window")
    out: list[LiftPiece] = []
    for ci, comp in enumerate(curve.components):
        seg_pts = list(comp.vertices)
        xs = [p.x for p in seg_pts]
        ys = [p.y for p in seg_pts]
        if comp.closed:
            bx0, bx1, by0, by1 = min(xs), max(xs), min(ys), max(ys)
            for i in range(floor(window.x0 - bx1) - 1, floor(window.x1 - bx0) + 2):
                for j in range(floor(window.y0 - by1) - 1, floor(window.y1 - by0) + 2):
                    v = Rat2(i, j)
                    pts = [p + v for p in seg_pts] + [seg_pts[0] + v]
                    for piece in _clip_polyline(pts, window):
                        out.append(LiftPiece(ci, (i, j), PLPath(_dedupe_closed(piece), closed=_is_loop(piece))))
            continue
        t = comp.translation
        # enumerate the translates transverse to t, then unroll along t
        perp_shifts = []
        if t.x != 0 and t.y == 0:
            by0, by1 = min(ys), max(ys)
            perp_shifts = [Rat2(0, j) for j in range(floor(window.y0 - by1) - 1, floor(window.y1 - by0) + 2)]
            span = (window.x1 - window.x0) // abs(int(t.x)) + 3
            along0 = floor((window.x0 - max(xs)) / abs(t.x)) - 1
        elif t.y != 0 and t.x == 0:
            bx0, bx1 = min(xs), max(xs)
            perp_shifts = [Rat2(i, 0) for i in range(floor(window.x0 - bx1) - 1, floor(window.x1 - bx0) + 2)]
            span = (window.y1 - window.y0) // abs(int(t.y)) + 3
            along0 = floor((window.y0 - max(ys)) / abs(t.y)) - 1
        else:
            raise ValueError("only horizontal or vertical periodic components are supported")
        lo = min(along0, -along0 - span) - 2
        hi = max(along0 + span, -along0) + 2
        path = comp.unrolled(lo, hi)
        for v in perp_shifts:
            pts = [p + v for p in path.vertices]
            for piece in _clip_polyline(pts, window):
                out.append(LiftPiece(ci, (int(v.x), int(v.y)), PLPath(piece)))
    return out


def _is_loop(piece: list[Rat2]) -> bool:
    return len(piece) > 3 and piece[0] == piece[-1]


def _dedupe_closed(piece: list[Rat2]) -> list[Rat2]:
    if _is_loop(piece):
        return piece[:-1]
    return piece


# --------------------------------------------------------------------------
# closing up an open curve and measuring its rotation

# rational points on the upper unit semicircle, from angle 0 to pi
_T_VALUES = [Fraction(0), Fraction(1, 5), Fraction(2, 5), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(5, 2), Fraction(5)]


def _semicircle(center: Rat2, radius: Fraction, start_angle_bottom: bool) -> list[Rat2]:
    """8-chord PL semicircle; the right half from bottom to top, or the left half from top to bottom."""
    pts = []
    for t in _T_VALUES:
        c = (1 - t * t) / (1 + t * t)
        s = 2 * t / (1 + t * t)
        # angle phi measured from the downward direction, counterclockwise
        if start_angle_bottom:
            pts.append(Rat2(center.x + radius * s, center.y - radius * c))
        else:
            pts.append(Rat2(center.x - radius * s, center.y + radius * c))
    pts.append(Rat2(center.x, center.y + radius) if start_angle_bottom else Rat2(center.x, center.y - radius))
    return pts


def complete_and_rotation(path: PLPath) -> int:
    """Close an open left-to-right path over the top and return its turning number.

    Both ends must sit on rightward horizontal segments.  The closure is a right
    semicircle rising from the end, a leftward top segment, and a left
    semicircle descending onto the start, each semicircle drawn with 8 chords.
    """
    vs = list(path.vertices)
    if path.closed or len(vs) < 2:
        raise ValueError("need an open path")
    first, last = vs[1] - vs[0], vs[-1] - vs[-2]
    for d in (first, last):
        if not (d.y == 0 and d.x > 0):
            raise ValueError("both ends must lie on rightward horizontal segments")
    xs = [p.x for p in vs]
    ys = [p.y for p in vs]
    diam = max(max(xs) - min(xs), max(ys) - min(ys))
    start, end = vs[0], vs[-1]
    r_end = 1 + diam
    top = end.y + 2 * r_end
    r_start = (top - start.y) / 2
    right = _semicircle(Rat2(end.x, end.y + r_end), r_end, True)
    left = _semicircle(Rat2(start.x, start.y + r_start), r_start, False)
    loop = vs + right[1:] + left[:-1]
    cleaned = [loop[0]]
    for p in loop[1:]:
        if p != cleaned[-1]:
            cleaned.append(p)
    if cleaned[-1] == cleaned[0]:
        cleaned.pop()
    return turning_number(PLPath(cleaned, closed=True))


__all__ = [
    "MarkedTorus",
    "CoverLoop",
    "TorusCurve",
    "CylinderCurve",
    "Window",
    "LiftPiece",
    "grid_map",
    "grid_map_inverse",
    "cylinder_to_torus",
    "torus_to_cylinder",
    "lift_to_cover",
    "complete_and_rotation",
    "simplify",
    "DEFAULT_W",
    "DEFAULT_Z",
    "PUNCTURE_RADIUS",
    "DegeneratePath",
]
