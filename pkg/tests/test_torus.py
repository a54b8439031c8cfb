from fractions import Fraction as F
from importlib import resources

import pytest
from hypothesis import assume, given, settings, strategies as st

from satfloer import staircase_companion, torus_knot_companion, unknot_companion
from satfloer.errors import BadHomology, PunctureCollision
from satfloer.exactgeom import PLPath, Rat2
from satfloer.harness import check_rotation, load_companion_file, wrapping_path
from satfloer.torus import (
    CoverLoop,
    CylinderCurve,
    MarkedTorus,
    TorusCurve,
    Window,
    complete_and_rotation,
    cylinder_to_torus,
    lift_to_cover,
    simplify,
    torus_to_cylinder,
)

from strategies import cylinder_curves


def P(x, y):
    return Rat2(F(x), F(y))


FIG3 = str(resources.files("satfloer") / "data" / "minus_trefoil_cylinder.curve")


class TestMarkedTorus:
    def test_defaults(self):
        t = MarkedTorus()
        assert t.w == P("1/4", "1/4") and t.z == P("3/8", "1/4")

    @pytest.mark.parametrize("w,z", [(P(0, "1/4"), P("3/8", "1/4")), (P("1/4", "1/4"), P("1/4", "1/4")),
                                     (P("1/4", "1/4"), P("1/2", "1/4")), (P("3/4", "1/4"), P("3/8", "1/4"))])
    def test_rejects(self, w, z):
        with pytest.raises(ValueError):
            MarkedTorus(w, z)


class TestLift:
    def test_horizontal_line(self):
        line = CoverLoop([P(0, "3/4")], P(1, 0))
        pieces = lift_to_cover(TorusCurve([line]), Window(0, 2, 0, 1))
        assert len(pieces) == 1
        vs = pieces[0].path.vertices
        assert vs[0] == P(0, "3/4") and vs[-1] == P(2, "3/4")

    def test_vertical_line(self):
        line = CoverLoop([P("1/4", 0)], P(0, 1))
        pieces = lift_to_cover(TorusCurve([line]), Window(0, 2, 0, 1))
        xs = sorted(p.path.vertices[0].x for p in pieces)
        # translates at x = 1/4 and 5/4 meet [0, 2]; the next one (9/4) does not
        assert xs == [F(1, 4), F(5, 4)]
        assert all(p.path.vertices[0].y == 0 and p.path.vertices[-1].y == 1 for p in pieces)

    def test_closed_loop_around_w(self):
        box = CoverLoop([P("1/8", "1/8"), P("3/8", "1/8"), P("3/8", "3/8"), P("1/8", "3/8")])
        pieces = lift_to_cover(TorusCurve([box]), Window(0, 2, 0, 1))
        assert sorted(p.shift for p in pieces) == [(0, 0), (1, 0)]
        assert all(p.path.closed for p in pieces)


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from(["T23", "-T23", "U", "box"]))
def test_lift_commutes_with_translation(dx, dy, which):
    if which == "box":
        curve = TorusCurve([CoverLoop([P("1/8", "1/8"), P("3/8", "1/8"), P("3/8", "3/8"), P("1/8", "3/8")])])
    else:
        curve = {"T23": torus_knot_companion(3), "-T23": torus_knot_companion(-3), "U": unknot_companion()}[which].torus
    w = Window(-1, 2, -1, 1)
    shift = Rat2(dx, dy)
    base = sorted(tuple(v + shift for v in p.path.vertices) for p in lift_to_cover(curve, w))
    moved = sorted(tuple(p.path.vertices) for p in lift_to_cover(curve, w.shifted(dx, dy)))
    assert base == moved


class TestCylinderTorus:
    def test_horizontal_circle(self):
        cyl = CylinderCurve([CoverLoop([P(0, "1/4")], P(1, 0))])
        t = cylinder_to_torus(cyl)
        assert len(t.components) == 1 and t.components[0].homology == (1, 0)

    def test_box_around_puncture(self):
        box = CoverLoop([P("-1/4", "1/4"), P("1/4", "1/4"), P("1/4", "3/4"), P("-1/4", "3/4")])
        t = cylinder_to_torus(CylinderCurve([box]))
        assert len(t.components) == 1
        assert t.components[0].closed and t.components[0].homology == (0, 0)

    def test_puncture_collision(self):
        through = CoverLoop([P("-1/2", 0), P(0, 0), P(0, 1)], P(1, 0))
        with pytest.raises(PunctureCollision):
            cylinder_to_torus(CylinderCurve([through]))

    def test_two_wrapping_components(self):
        a = CoverLoop([P(0, "1/4")], P(1, 0))
        b = CoverLoop([P(0, "-1/4")], P(1, 0))
        with pytest.raises(BadHomology):
            torus_to_cylinder(TorusCurve([a, b]))

    def test_horizontal_line_back_to_circle(self):
        line = CoverLoop([P("1/4", "-1/12")], P(1, 0))
        back = torus_to_cylinder(TorusCurve([line]))
        assert len(back.components) == 1 and not back.components[0].closed
        ys = {v.y for v in back.components[0].canonical().vertices}
        assert len(ys) == 1

    def test_hand_laid_fixture_matches_staircase(self):
        fixture = load_companion_file(FIG3)
        built = staircase_companion([1, 1], -1)
        assert simplify(fixture.cylinder) == simplify(built.cylinder)
        assert simplify(fixture.torus) == simplify(built.torus)

    def test_hand_laid_fixture_round_trip(self):
        fixture = load_companion_file(FIG3)
        t = cylinder_to_torus(fixture.cylinder)
        assert simplify(torus_to_cylinder(t)) == simplify(fixture.cylinder)
        assert simplify(cylinder_to_torus(torus_to_cylinder(t))) == simplify(t)


@settings(max_examples=100, deadline=None)
@given(cylinder_curves())
def test_round_trip_property(cyl):
    try:
        t = cylinder_to_torus(cyl)
    except PunctureCollision:
        assume(False)
    assert simplify(torus_to_cylinder(t)) == simplify(cyl)
    assert simplify(cylinder_to_torus(torus_to_cylinder(t))) == simplify(t)


class TestRotation:
    def test_straight_segment(self):
        assert complete_and_rotation(PLPath([P(0, 0), P(1, 0)])) == 1

    def _with_loops(self, senses):
        # a horizontal path with small square kinks
        pts = [P(0, 0)]
        x = F(1)
        for s in senses:
            if s > 0:  # counter-clockwise: down, right, up, cross back over
                pts += [P(x, 0), P(x, -1), P(x + 1, -1), P(x + 1, 1), P(x - F(1, 2), 1), P(x - F(1, 2), 0)]
            else:  # clockwise: the mirror image across the path
                pts += [P(x, 0), P(x, 1), P(x + 1, 1), P(x + 1, -1), P(x - F(1, 2), -1), P(x - F(1, 2), 0)]
            x += 3
        pts.append(P(x, 0))
        clean = [pts[0]]
        for p in pts[1:]:
            if p != clean[-1]:
                clean.append(p)
        return PLPath(clean)

    def test_loops_add_up(self):
        # each kink changes the rotation by one; opposite kinks cancel
        assert complete_and_rotation(self._with_loops([])) == 1
        assert complete_and_rotation(self._with_loops([1, -1])) == 1
        assert complete_and_rotation(self._with_loops([1])) == 2
        assert complete_and_rotation(self._with_loops([-1])) == 0

    @pytest.mark.parametrize("q", [3, -3, 5, -5, 7])
    def test_staircases(self, q):
        assert abs(check_rotation(torus_knot_companion(q))) == 1

    def test_several_periods(self):
        c = torus_knot_companion(3)
        assert [check_rotation(c, k) for k in (1, 2, 4)] == [1, 1, 1]
        path = wrapping_path(c, 2)
        assert path.vertices[-1] - path.vertices[0] == Rat2(2, 0)
