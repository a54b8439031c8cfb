"""Companion curves: the immersed multicurve of a knot complement.

Curves are drawn in the cylinder model (punctures at (0, h + 1/2)) and carried
to the torus with :func:`satfloer.torus.cylinder_to_torus`.  Supported inputs
are the unknot, staircase curves of L-space knots and their mirrors, and raw
cylinder data (for example thin knots, whose curves are a horizontal line plus
closed figure-eight components).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidSpec, MultipleWrappingComponents, NoWrappingComponent
from .exactgeom import Rat2
from .torus import CoverLoop, CylinderCurve, TorusCurve, cylinder_to_torus

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CompanionCurve:
    cylinder: CylinderCurve
    torus: TorusCurve
    name: str = "custom"
    genus_hint: int | None = None


@dataclass(frozen=True)
class StaircaseSpec:
    """Step lengths of a staircase complex, read from the top generator down."""

    steps: tuple[int, ...]

    def __init__(self, steps: Iterable[int]):
        steps = tuple(steps)
        if not steps or len(steps) % 2:
            raise InvalidSpec("a staircase needs a positive even number of steps")
        if any((not isinstance(b, int)) or b <= 0 for b in steps):
            raise InvalidSpec("staircase steps must be positive integers")
        if steps != tuple(reversed(steps)):
            raise InvalidSpec("staircase steps must read the same in both directions")
        object.__setattr__(self, "steps", steps)

    @property
    def genus(self) -> int:
        return sum(self.steps) // 2


def _validated(cyl: CylinderCurve, name: str, genus: int | None) -> CompanionCurve:
    wrapping = [c for c in cyl.components if not c.closed]
    if not wrapping:
        raise NoWrappingComponent("the curve has no component wrapping around the cylinder")
    if len(wrapping) > 1:
        raise MultipleWrappingComponents(f"{len(wrapping)} components wrap around the cylinder")
    for c in wrapping:
        if c.homology not in ((1, 0), (-1, 0)):
            raise InvalidSpec(f"the wrapping component has class {c.homology}, expected (1, 0)")
    # cylinder_to_torus raises PunctureCollision for curves too close to a puncture
    return CompanionCurve(cyl, cylinder_to_torus(cyl), name, genus)


def unknot_companion() -> CompanionCurve:
    line = CoverLoop([Rat2(0, QUARTER)], Rat2(1, 0))
    return _validated(CylinderCurve([line]), "U", 0)


def staircase_vertices(spec: StaircaseSpec, sign: int = 1) -> list[Rat2]:
    """One period of the zigzag curve of a staircase.

    Starting at height g on the left seam, the curve crosses to x = 1/4, drops
    by the first step, crosses to x = -1/4, drops by the next step and so on,
    ending at height -g on the right seam; the period closes up along the
    seam at the back of the cylinder.  The mirror knot (sign -1) uses the
    reflection x -> -x with the orientation reversed, so that the curve still
    runs left to right.
    """
    if sign not in (1, -1):
        raise InvalidSpec("sign must be +1 or -1")
    h = Fraction(spec.genus)
    pts = [Rat2(-HALF, h)]
    side = QUARTER
    for b in spec.steps:
        pts.append(Rat2(side, h))
        h -= b
        pts.append(Rat2(side, h))
        side = -side
    pts.append(Rat2(HALF, h))
    if sign < 0:
        pts = [Rat2(-p.x, p.y) for p in reversed(pts)]
    return pts


def staircase_companion(spec: StaircaseSpec | Sequence[int], sign: int = 1, name: str | None = None) -> CompanionCurve:
    if not isinstance(spec, StaircaseSpec):
        spec = StaircaseSpec(spec)
    comp = CoverLoop(staircase_vertices(spec, sign), Rat2(1, 0))
    label = name or ("" if sign > 0 else "-") + "staircase" + str(list(spec.steps))
    return _validated(CylinderCurve([comp]), label, spec.genus)


def torus_knot_companion(q: int) -> CompanionCurve:
    """T(2, q) for odd q (negative q gives the mirror)."""
    if q % 2 == 0 or abs(q) < 3:
        raise InvalidSpec("need an odd q with |q| >= 3")
    spec = StaircaseSpec([1] * (abs(q) - 1))
    name = ("" if q > 0 else "-") + f"T2,{abs(q)}"
    return staircase_companion(spec, 1 if q > 0 else -1, name)


def companion_from_raw(components: Iterable[CoverLoop] | CylinderCurve, name: str = "custom") -> CompanionCurve:
    """Validate raw cylinder data (one wrapping component plus closed ones)."""
    cyl = components if isinstance(components, CylinderCurve) else CylinderCurve(list(components))
    return _validated(cyl, name, None)


def figure_eight_component(height: int = 0) -> CoverLoop:
    """A closed figure-eight around the punctures at height +- 1/2 (plus an offset).

    This is the closed component carried by the curve of a thin knot with a
    square summand in its complex; it winds once around each of the two
    punctures, in opposite senses.
    """
    e = Fraction(1, 8)
    h = Fraction(height)
    pts = [
        (-QUARTER, 1), (QUARTER, 1), (QUARTER, e), (-QUARTER, -e),
        (-QUARTER, -1), (QUARTER, -1), (QUARTER, -e), (-QUARTER, e),
    ]
    return CoverLoop([Rat2(x, y + h) for x, y in pts])


def orient_thin(companion: CompanionCurve) -> CompanionCurve:
    """Orient the closed components of a thin knot's curve.

    A closed component carries no orientation of its own, but the signs of
    its generators feed the Alexander polynomial.  For a thin knot the Maslov
    grading is the Alexander grading plus a constant, so sign * (-1)^A is the
    same on every generator of the companion's own complex.  Pairing with the
    core pattern recovers that complex; each closed component is reversed
    when its generators disagree with the wrapping component.
    """
    from .pairing import assemble, minimize
    from .patterns import unknot_pattern

    diagram = assemble(unknot_pattern(), companion)
    result = minimize(diagram)
    strands = diagram.data.strands
    totals: dict[int, int] = {}
    for x in result.survivors:
        comp = strands[x.strand].component
        totals[comp] = totals.get(comp, 0) + x.sign * (-1) ** (x.height % 2)
    alpha = diagram.alpha.components
    wrap = next(i for i, c in enumerate(alpha) if not c.closed)
    ref = totals.get(wrap, 0)
    # the torus components are listed in the same order as the cylinder ones
    comps = []
    for i, c in enumerate(companion.cylinder.components):
        t = totals.get(i, 0)
        comps.append(c.reversed() if c.closed and t and (t > 0) != (ref > 0) else c)
    return _validated(CylinderCurve(comps), companion.name, companion.genus_hint)


def figure_eight_knot_companion() -> CompanionCurve:
    """Curve of the figure-eight knot: the unknot's line plus one figure-eight component."""
    line = CoverLoop([Rat2(0, QUARTER)], Rat2(1, 0))
    return orient_thin(companion_from_raw([line, figure_eight_component()], "4_1"))
