"""Knot Floer ranks of (1,1)-satellites from immersed-curve pairing diagrams."""

from .companions import (
    CompanionCurve,
    StaircaseSpec,
    companion_from_raw,
    figure_eight_knot_companion,
    orient_thin,
    staircase_companion,
    torus_knot_companion,
    unknot_companion,
)
from .exactgeom import Rat2, Segment, PLPath, intersect_segments, build_arrangement, winding_number, turning_number
from .gradings import GradedCount, absolute_alexander, alexander_polynomial, intersection_sign, relative_alexander
from .pairing import (
    MinPosResult,
    PairingDiagram,
    assemble,
    eliminate_bigon,
    find_trivial_bigons,
    minimize,
    straighten_beta,
)
from .patterns import PatternTuple, cable_pattern, mazur_pattern, pattern_from_raw, pushed_pattern, unknot_pattern
from .torus import (
    CoverLoop,
    CylinderCurve,
    MarkedTorus,
    TorusCurve,
    complete_and_rotation,
    cylinder_to_torus,
    lift_to_cover,
    torus_to_cylinder,
)

__version__ = "0.1.0"
