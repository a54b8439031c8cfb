"""Exact rational planar geometry.

Everything here works over :class:`fractions.Fraction`; no predicate ever looks
at a float.  Points are :class:`Rat2`, curves are :class:`PLPath`, and
:func:`build_arrangement` turns a list of curves into a planar subdivision with
faces and mark containment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegeneratePath, NonGenericInput, PointOnCurve

Number = int | Fraction | str


def _q(v: Number) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(v)


@dataclass(frozen=True, order=True)
class Rat2:
    """A point (or vector) with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __init__(self, x: Number, y: Number):
        object.__setattr__(self, "x", _q(x))
        object.__setattr__(self, "y", _q(y))

    def __add__(self, other: "Rat2") -> "Rat2":
        return Rat2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Rat2") -> "Rat2":
        return Rat2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Rat2":
        return Rat2(-self.x, -self.y)

    def scale(self, k: Number) -> "Rat2":
        k = _q(k)
        return Rat2(self.x * k, self.y * k)

    def cross(self, other: "Rat2") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Rat2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def __repr__(self) -> str:
        return f"Rat2({self.x}, {self.y})"


ORIGIN = Rat2(0, 0)


def lerp(a: Rat2, b: Rat2, t: Fraction) -> Rat2:
    return Rat2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def orient(a: Rat2, b: Rat2, c: Rat2) -> int:
    """Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear."""
    v = (b - a).cross(c - a)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Segment:
    a: Rat2
    b: Rat2

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must differ")

    @property
    def direction(self) -> Rat2:
        return self.b - self.a

    def at(self, t: Fraction) -> Rat2:
        return lerp(self.a, self.b, t)

    def contains(self, p: Rat2) -> bool:
        d = self.direction
        if d.cross(p - self.a) != 0:
            return False
        t = (p - self.a).dot(d) / d.dot(d)
        return 0 <= t <= 1


@dataclass(frozen=True)
class SegmentHit:
    """A single intersection point with its parameters along both segments."""

    point: Rat2
    s: Fraction
    t: Fraction


@dataclass(frozen=True)
class Overlap:
    """Two collinear segments sharing a piece of positive length.

    ``s_range`` and ``t_range`` give the shared piece as parameter intervals on
    the first and second segment respectively.
    """

    s_range: tuple[Fraction, Fraction]
    t_range: tuple[Fraction, Fraction]


def intersect_segments(s1: Segment, s2: Segment) -> list[SegmentHit] | Overlap:
    """Intersect two closed segments exactly.

    Returns a list of zero or one :class:`SegmentHit`, or an :class:`Overlap`
    when the segments are collinear and share a piece of positive length.
    """
    d1, d2 = s1.direction, s2.direction
    den = d1.cross(d2)
    w = s2.a - s1.a
    if den != 0:
        s = w.cross(d2) / den
        t = w.cross(d1) / den
        if 0 <= s <= 1 and 0 <= t <= 1:
            return [SegmentHit(s1.at(s), s, t)]
        return []
    if w.cross(d1) != 0:
        return []
    # collinear: project s2's endpoints onto s1's parameter
    dd = d1.dot(d1)
    t0 = (s2.a - s1.a).dot(d1) / dd
    t1 = (s2.b - s1.a).dot(d1) / dd
    lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
    if lo > hi:
        return []

    def back(u: Fraction) -> Fraction:
        p = s1.at(u)
        return (p - s2.a).dot(d2) / d2.dot(d2)

    if lo == hi:
        return [SegmentHit(s1.at(lo), lo, back(lo))]
    return Overlap((lo, hi), (back(lo), back(hi)))


@dataclass(frozen=True)
class PLPath:
    """Piecewise-linear path; when ``closed`` the last vertex joins the first."""

    vertices: tuple[Rat2, ...]
    closed: bool = False

    def __init__(self, vertices: Iterable[Rat2], closed: bool = False):
        vs = tuple(vertices)
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive vertices must differ")
        if closed and vs[0] == vs[-1]:
            raise ValueError("closed paths store the closing vertex implicitly")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "closed", bool(closed))

    def segments(self) -> list[Segment]:
        vs = self.vertices
        segs = [Segment(a, b) for a, b in zip(vs, vs[1:])]
        if self.closed:
            segs.append(Segment(vs[-1], vs[0]))
        return segs

    def reversed(self) -> "PLPath":
        return PLPath(tuple(reversed(self.vertices)), self.closed)

    def translated(self, v: Rat2) -> "PLPath":
        return PLPath(tuple(p + v for p in self.vertices), self.closed)

    def rotated(self, k: int) -> "PLPath":
        if not self.closed:
            raise ValueError("only closed paths can be cyclically rotated")
        k %= len(self.vertices)
        return PLPath(self.vertices[k:] + self.vertices[:k], True)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains_point(self, p: Rat2) -> bool:
        return any(s.contains(p) for s in self.segments())


def winding_number(path: PLPath, p: Rat2) -> int:
    """Signed number of times a closed path winds around ``p``."""
    if not path.closed:
        raise ValueError("winding number needs a closed path")
    if path.contains_point(p):
        raise PointOnCurve(f"{p} lies on the path")
    wn = 0
    for s in path.segments():
        a, b = s.a, s.b
        if a.y <= p.y < b.y and orient(a, b, p) > 0:
            wn += 1
        elif b.y <= p.y < a.y and orient(a, b, p) < 0:
            wn -= 1
    return wn


def _half(d: Rat2) -> int:
    return 0 if (d.y > 0 or (d.y == 0 and d.x > 0)) else 1


def angle_less(u: Rat2, v: Rat2) -> bool:
    """Strict comparison of the polar angles of u and v in [0, 2*pi)."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return u.cross(v) > 0


def turning_number(path: PLPath) -> int:
    """Total signed exterior angle of a closed PL loop divided by 2*pi."""
    if not path.closed:
        raise ValueError("turning number needs a closed path")
    dirs = [s.direction for s in path.segments()]
    n = len(dirs)
    wraps = 0
    for i in range(n):
        d1, d2 = dirs[i - 1], dirs[i]
        c = d1.cross(d2)
        if c == 0:
            if d1.dot(d2) < 0:
                raise DegeneratePath(f"cusp at vertex {path.vertices[i]}")
            continue
        if c > 0 and angle_less(d2, d1):
            wraps += 1
        elif c < 0 and angle_less(d1, d2):
            wraps -= 1
    return wraps


def path_self_intersections(path: PLPath) -> list[Rat2]:
    """Points where non-adjacent edges of a path meet (empty for embedded paths)."""
    segs = path.segments()
    n = len(segs)
    out: list[Rat2] = []
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (path.closed and i == 0 and j == n - 1)
            r = intersect_segments(segs[i], segs[j])
            if isinstance(r, Overlap):
                out.append(segs[i].at(r.s_range[0]))
                continue
            for h in r:
                if adjacent:
                    shared = segs[i].b if j == i + 1 else segs[i].a
                    if h.point == shared:
                        continue
                out.append(h.point)
    return out


# --------------------------------------------------------------------------
# arrangements


@dataclass
class ArrEdge:
    u: int
    v: int
    owners: frozenset
    left_face: int = -1
    right_face: int = -1


@dataclass
class Face:
    index: int
    cycles: list[list[int]]  # vertex index cycles; first is the outer boundary when bounded
    edge_cycles: list[list[int]]
    bounded: bool
    area: Fraction
    marks: list[int] = field(default_factory=list)


@dataclass
class Arrangement:
    vertices: list[Rat2]
    vertex_edges: list[list[int]]
    edges: list[ArrEdge]
    faces: list[Face]
    mark_face: list[int]
    components: int

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def bounded_faces(self) -> list[Face]:
        return [f for f in self.faces if f.bounded]


def _polygon_area2(pts: Sequence[Rat2]) -> Fraction:
    return sum((pts[i].cross(pts[(i + 1) % len(pts)]) for i in range(len(pts))), Fraction(0))


def _inside_cycle(pts: Sequence[Rat2], p: Rat2) -> bool:
    inside = False
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            if (orient(a, b, p) > 0) == (b.y > a.y):
                inside = not inside
    return inside


BOX = "box"


def build_arrangement(curves: Sequence[PLPath], marks: Sequence[Rat2] = ()) -> Arrangement:
    """Planar subdivision cut out by ``curves`` inside their bounding box.

    Curve ``i`` owns its edges under the label ``i``; the bounding box edges are
    labelled ``"box"``.  Each mark is assigned to exactly one face.
    """
    marks = list(marks)
    for m in marks:
        for c in curves:
            if c.contains_point(m):
                raise NonGenericInput(f"mark {m} lies on a curve")
    if not curves:
        face = Face(0, [], [], False, Fraction(0), list(range(len(marks))))
        return Arrangement([], [], [], [face], [0] * len(marks), 0)

    pts = [p for c in curves for p in c.vertices] + marks
    x0, y0 = min(p.x for p in pts), min(p.y for p in pts)
    x1, y1 = max(p.x for p in pts), max(p.y for p in pts)
    if x0 == x1 or y0 == y1:
        x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    box = PLPath([Rat2(x0, y0), Rat2(x1, y0), Rat2(x1, y1), Rat2(x0, y1)], closed=True)

    labelled: list[tuple[object, Segment]] = []
    for ci, c in enumerate(curves):
        for s in c.segments():
            labelled.append((ci, s))
    curve_count = len(labelled)
    for s in box.segments():
        labelled.append((BOX, s))

    cuts: list[set[Fraction]] = [{Fraction(0), Fraction(1)} for _ in labelled]
    for i in range(len(labelled)):
        oi, si = labelled[i]
        for j in range(i + 1, len(labelled)):
            oj, sj = labelled[j]
            r = intersect_segments(si, sj)
            if isinstance(r, Overlap):
                if oi != oj and oi != BOX and oj != BOX:
                    raise NonGenericInput("two curves share a segment of positive length")
                cuts[i].update(r.s_range)
                cuts[j].update(r.t_range)
                continue
            for h in r:
                cuts[i].add(h.s)
                cuts[j].add(h.t)

    vindex: dict[Rat2, int] = {}
    vertices: list[Rat2] = []

    def vid(p: Rat2) -> int:
        k = vindex.get(p)
        if k is None:
            k = vindex[p] = len(vertices)
            vertices.append(p)
        return k

    edge_map: dict[tuple[int, int], set] = {}
    for idx, (owner, s) in enumerate(labelled):
        ts = sorted(cuts[idx])
        for ta, tb in zip(ts, ts[1:]):
            u, v = vid(s.at(ta)), vid(s.at(tb))
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            edge_map.setdefault(key, set()).add(owner)
    # a box piece that coincides with a curve piece belongs to the curve
    edges: list[ArrEdge] = []
    for (u, v), owners in sorted(edge_map.items()):
        if len(owners) > 1 and BOX in owners:
            owners = owners - {BOX}
        edges.append(ArrEdge(u, v, frozenset(owners)))
    del curve_count

    vertex_edges: list[list[int]] = [[] for _ in vertices]
    for ei, e in enumerate(edges):
        vertex_edges[e.u].append(ei)
        vertex_edges[e.v].append(ei)

    # half-edge h = 2*ei (u->v) or 2*ei+1 (v->u)
    def tail(h):
        e = edges[h >> 1]
        return e.u if h % 2 == 0 else e.v

    def head(h):
        e = edges[h >> 1]
        return e.v if h % 2 == 0 else e.u

    from functools import cmp_to_key

    outgoing: list[list[int]] = []
    for vi in range(len(vertices)):
        hs = [2 * ei if edges[ei].u == vi else 2 * ei + 1 for ei in vertex_edges[vi]]
        base = vertices[vi]

        def cmp(h1, h2, base=base):
            d1, d2 = vertices[head(h1)] - base, vertices[head(h2)] - base
            if angle_less(d1, d2):
                return -1
            if angle_less(d2, d1):
                return 1
            return 0

        hs.sort(key=cmp_to_key(cmp))
        outgoing.append(hs)
    pos = {}
    for vi, hs in enumerate(outgoing):
        for k, h in enumerate(hs):
            pos[h] = (vi, k)

    def nxt(h):
        twin = h ^ 1
        vi, k = pos[twin]
        hs = outgoing[vi]
        return hs[(k - 1) % len(hs)]

    seen = set()
    cycles: list[list[int]] = []
    for h0 in range(2 * len(edges)):
        if h0 in seen:
            continue
        cyc = []
        h = h0
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = nxt(h)
        cycles.append(cyc)

    # connected components
    parent = list(range(len(vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        ra, rb = find(e.u), find(e.v)
        if ra != rb:
            parent[ra] = rb
    components = len({find(v) for v in range(len(vertices))})

    cyc_pts = [[vertices[tail(h)] for h in c] for c in cycles]
    cyc_area = [_polygon_area2(p) / 2 for p in cyc_pts]
    positive = [i for i, a in enumerate(cyc_area) if a > 0]
    faces: list[Face] = []
    cycle_face = {}
    for i in sorted(positive, key=lambda i: cyc_area[i]):
        f = Face(len(faces), [[tail(h) for h in cycles[i]]], [[h >> 1 for h in cycles[i]]], True, cyc_area[i])
        cycle_face[i] = f.index
        faces.append(f)
    unbounded = Face(len(faces), [], [], False, Fraction(0))
    faces.append(unbounded)

    def containing_face(p: Rat2, exclude_vertex_cycle: int | None = None) -> int:
        best = None
        for i in positive:
            if i == exclude_vertex_cycle:
                continue
            if _inside_cycle(cyc_pts[i], p):
                if best is None or cyc_area[i] < cyc_area[best]:
                    best = i
        return unbounded.index if best is None else cycle_face[best]

    for i, a in enumerate(cyc_area):
        if a > 0:
            continue
        # a hole boundary: find the face containing one of its vertices
        probe = cyc_pts[i][0]
        candidates = [
            j for j in positive if _inside_cycle(cyc_pts[j], probe) and probe not in cyc_pts[j]
        ]
        if candidates:
            j = min(candidates, key=lambda j: cyc_area[j])
            fidx = cycle_face[j]
        else:
            fidx = unbounded.index
        faces[fidx].cycles.append([tail(h) for h in cycles[i]])
        faces[fidx].edge_cycles.append([h >> 1 for h in cycles[i]])
        cycle_face[i] = fidx

    for ci, cyc in enumerate(cycles):
        for h in cyc:
            e = edges[h >> 1]
            if h % 2 == 0:
                e.left_face = cycle_face[ci]
            else:
                e.right_face = cycle_face[ci]

    mark_face = []
    for mi, m in enumerate(marks):
        fidx = containing_face(m)
        faces[fidx].marks.append(mi)
        mark_face.append(fidx)
    return Arrangement(vertices, vertex_edges, edges, faces, mark_face, components)
