"""SVG pictures of pairing diagrams in the universal cover.

Beta is blue and alpha red; lifts of w are filled dots and lifts of z open
dots.  Unit squares of the grid are drawn in grey with their integer
coordinates along the axes, and the edges mu_1 .. mu_k met by beta_0 are
highlighted.  The output depends only on the input, so it can be diffed.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from xml.sax.saxutils import escape

from .pairing import MinPosResult, PairingDiagram, oriented_upward
from .torus import TorusCurve, Window, lift_to_cover

SCALE = 120
MARGIN = 40
BLUE = "#1f4fd1"
RED = "#d1241f"


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"


def default_window(diagram: PairingDiagram, columns: int | None = None) -> Window:
    xs = [p.x for p in diagram.beta.vertices]
    ys = [p.y for c in diagram.alpha.components for p in c.vertices] or [Fraction(0)]
    x0 = floor(min(xs)) - 1
    x1 = ceil(max(xs)) + 1
    if columns is not None:
        x1 = max(x1, x0 + columns)
    return Window(x0, x1, floor(min(ys)) - 1, ceil(max(ys)) + 1)


def emit_svg(obj: PairingDiagram | MinPosResult, stage: str = "raw", columns: int | None = None) -> str:
    """Render a diagram (``stage='raw'``) or a minimised result (``stage='minimized'``)."""
    if isinstance(obj, MinPosResult):
        result, diagram = obj, obj.diagram
    else:
        result, diagram = None, obj
    if stage not in ("raw", "minimized"):
        raise ValueError("stage must be 'raw' or 'minimized'")
    if stage == "minimized" and result is None:
        raise ValueError("a minimised picture needs a MinPosResult")
    win = default_window(diagram, columns)
    width = (win.x1 - win.x0) * SCALE + 2 * MARGIN
    height = (win.y1 - win.y0) * SCALE + 2 * MARGIN

    def X(x) -> str:
        return _fmt(MARGIN + float(x - win.x0) * SCALE)

    def Y(y) -> str:
        return _fmt(MARGIN + float(win.y1 - y) * SCALE)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(diagram.pattern_name)} paired with {escape(diagram.companion_name)} ({stage})</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g id="grid" stroke="#bbbbbb" stroke-width="1">',
    ]
    for x in range(win.x0, win.x1 + 1):
        out.append(f'<line x1="{X(x)}" y1="{Y(win.y0)}" x2="{X(x)}" y2="{Y(win.y1)}"/>')
    for y in range(win.y0, win.y1 + 1):
        out.append(f'<line x1="{X(win.x0)}" y1="{Y(y)}" x2="{X(win.x1)}" y2="{Y(y)}"/>')
    out.append("</g>")
    out.append('<g id="labels" font-family="sans-serif" font-size="12" fill="#555555">')
    for x in range(win.x0, win.x1 + 1):
        out.append(f'<text x="{X(x)}" y="{_fmt(float(Y(win.y0)) + 16)}" text-anchor="middle">{x}</text>')
    for y in range(win.y0, win.y1 + 1):
        out.append(f'<text x="{_fmt(float(X(win.x0)) - 8)}" y="{Y(y)}" text-anchor="end">{y}</text>')
    out.append("</g>")

    k = diagram.data.k
    if k:
        out.append('<g id="mu" stroke="#2a9d3a" stroke-width="4" font-family="sans-serif" font-size="13" fill="#2a9d3a">')
        for j in range(1, k + 1):
            if win.x0 <= j - 1 and j <= win.x1:
                out.append(f'<line x1="{X(j - 1)}" y1="{Y(0)}" x2="{X(j)}" y2="{Y(0)}"/>')
                out.append(f'<text x="{X(Fraction(2 * j - 1, 2))}" y="{_fmt(float(Y(0)) + 16)}" stroke="none" '
                           f'text-anchor="middle">mu{j}</text>')
        out.append("</g>")

    out.append(f'<g id="beta-translates" stroke="{BLUE}" stroke-opacity="0.25" stroke-width="1.5" fill="none">')
    beta = oriented_upward(diagram.beta)
    for piece in lift_to_cover(TorusCurve([beta]), win):
        if piece.shift[0] == 0:
            continue
        out.append(_polyline(piece.path, X, Y))
    out.append("</g>")
    out.append(f'<g id="beta0" stroke="{BLUE}" stroke-width="2.5" fill="none">')
    for piece in lift_to_cover(TorusCurve([beta]), win):
        if piece.shift[0] == 0:
            out.append(_polyline(piece.path, X, Y))
    out.append("</g>")

    out.append(f'<g id="alpha" stroke="{RED}" stroke-width="2" fill="none">')
    for piece in lift_to_cover(diagram.alpha, win):
        out.append(_polyline(piece.path, X, Y))
    out.append("</g>")

    ws, zs = diagram.torus.lifts(win.x0, win.x1, win.y0, win.y1)
    out.append('<g id="basepoints" stroke="black" stroke-width="1.5">')
    for p in ws:
        if win.x0 <= p.x <= win.x1 and win.y0 <= p.y <= win.y1:
            out.append(f'<circle cx="{X(p.x)}" cy="{Y(p.y)}" r="4" fill="black"/>')
    for p in zs:
        if win.x0 <= p.x <= win.x1 and win.y0 <= p.y <= win.y1:
            out.append(f'<circle cx="{X(p.x)}" cy="{Y(p.y)}" r="4" fill="white"/>')
    out.append("</g>")

    pts = result.survivors if stage == "minimized" else diagram.data.crossings
    out.append('<g id="crossings" fill="#222222">')
    for c in sorted(pts, key=lambda c: (c.point.x, c.point.y)):
        out.append(f'<rect class="crossing" x="{_fmt(float(X(c.point.x)) - 3)}" y="{_fmt(float(Y(c.point.y)) - 3)}" '
                   f'width="6" height="6"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _polyline(path, X, Y) -> str:
    vs = list(path.vertices)
    if path.closed:
        vs.append(vs[0])
    pts = " ".join(f"{X(p.x)},{Y(p.y)}" for p in vs)
    return f'<polyline points="{pts}"/>'
