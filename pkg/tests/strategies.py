"""Hypothesis strategies for random valid cylinder curves."""

from fractions import Fraction as F

from hypothesis import strategies as st

from satfloer.exactgeom import Rat2
from satfloer.torus import CoverLoop, CylinderCurve

# x positions of vertical edges keep clear of the puncture column x = 0
XS = [F(s * k, 16) for k in (3, 4, 5, 6, 7) for s in (1, -1)]
# heights of horizontal edges avoid the puncture rows h + 1/2
YS = [F(k, 4) for k in range(-12, 13) if F(k, 4) % 1 != F(1, 2)]


def _dedupe(pts):
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def figure_eight(height):
    e = F(1, 8)
    q = F(1, 4)
    pts = [(-q, 1), (q, 1), (q, e), (-q, -e), (-q, -1), (q, -1), (q, -e), (-q, e)]
    return CoverLoop([Rat2(x, y + height) for x, y in pts])


@st.composite
def cylinder_curves(draw):
    """An axis-parallel zigzag wrapping once around, plus maybe a figure-eight."""
    n = draw(st.integers(1, 4))
    ys = draw(st.lists(st.sampled_from(YS), min_size=n, max_size=n))
    xs = draw(st.lists(st.sampled_from(XS), min_size=n - 1, max_size=n - 1))
    pts = [Rat2(F(-1, 2), ys[0])]
    y = ys[0]
    for i in range(n - 1):
        pts.append(Rat2(xs[i], y))
        y = ys[i + 1]
        pts.append(Rat2(xs[i], y))
    comps = [CoverLoop(_dedupe(pts), Rat2(1, 0))]
    if draw(st.booleans()):
        comps.append(figure_eight(draw(st.integers(-3, 3))))
    return CylinderCurve(comps)
