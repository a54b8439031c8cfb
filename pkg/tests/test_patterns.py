from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from satfloer import (
    assemble,
    cable_pattern,
    mazur_pattern,
    minimize,
    pattern_from_raw,
    pushed_pattern,
    straighten_beta,
    unknot_companion,
    unknot_pattern,
)
from satfloer.errors import BasepointOnCurve, InvalidSpec, NotCoprime, NotEmbedded, WrongHomologyClass
from satfloer.exactgeom import Rat2
from satfloer.patterns import cable_word, check_embedded, twist_meridian, winding_number
from satfloer.torus import CoverLoop, MarkedTorus

from conftest import companion, oracle, pattern


def P(x, y):
    return Rat2(F(x), F(y))


def rank(p, c):
    return minimize(assemble(p, c)).intersection_count


class TestRawPatterns:
    def test_vertical_line(self):
        pt = pattern_from_raw([P("5/16", 0)])
        assert pt.winding_number == 1
        assert pt.beta.homology == (0, 1)

    def test_downward_curve_is_reversed(self):
        pt = pattern_from_raw(CoverLoop([P("5/16", 0)], P(0, -1)))
        assert pt.beta.homology == (0, 1)

    def test_through_w(self):
        with pytest.raises(BasepointOnCurve):
            pattern_from_raw([P("1/4", 0)])

    def test_wrong_class(self):
        with pytest.raises(WrongHomologyClass):
            pattern_from_raw(CoverLoop([P("5/16", 0)], P(1, 1)))

    def test_self_crossing(self):
        # a zigzag whose return stroke crosses its outgoing stroke
        pts = [P("5/16", 0), P("5/16", "1/2"), P("3/4", "1/2"), P("3/4", "5/8"), P("5/8", "5/8"), P("5/8", "3/8"),
               P("1/2", "3/8"), P("1/2", "3/4"), P("5/16", "3/4")]
        with pytest.raises(NotEmbedded):
            pattern_from_raw(pts)

    def test_round_trip_through_validation(self):
        for name in ["unknot", "cable(2,3)", "cable(3,1)", "mazur"]:
            pt = pattern(name)
            again = pattern_from_raw(pt.beta, pt.torus, pt.name)
            assert again.winding_number == pt.winding_number


class TestUnknotPattern:
    def test_line_between_basepoints(self):
        pt = unknot_pattern()
        t = pt.torus
        x = pt.beta.vertices[0].x
        assert t.w.x < x < t.z.x
        assert all(v.x == x for v in pt.beta.vertices)

    def test_winding(self):
        assert unknot_pattern().winding_number == 1

    def test_pairings(self):
        assert rank(unknot_pattern(), unknot_companion()) == 1
        assert rank(unknot_pattern(), companion("T23")) == 3


class TestCables:
    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            cable_pattern(4, 2)

    def test_no_strands(self):
        with pytest.raises(InvalidSpec):
            cable_pattern(0, 1)

    @pytest.mark.parametrize("p,q", [(1, 0), (2, 1), (2, -1), (2, 3), (3, 1), (3, 2), (4, 3), (5, 2)])
    def test_winding_is_strand_count(self, p, q):
        assert cable_pattern(p, q).winding_number == p

    def test_one_strand_is_the_core(self):
        for c in ["U", "T23", "-T23"]:
            assert rank(cable_pattern(1, 0), companion(c)) == rank(unknot_pattern(), companion(c))

    def test_word_rule(self):
        assert cable_word(2, 1) == "A"
        assert cable_word(3, 1) == "AA"
        assert cable_word(3, 2) == "ABA"
        assert cable_word(4, 3) == "ABABA"

    def test_twist_adds_a_full_turn_per_strand(self):
        base = pushed_pattern("A")
        twisted = twist_meridian(base.beta, 1)
        check_embedded(twisted)
        pt = pattern_from_raw(twisted, base.torus)
        assert [rank(pt, companion(c)) for c in ["U", "T23", "-T23"]] == [3, 5, 11]

    @pytest.mark.parametrize(
        "p,q", [(2, 1), (2, -1), (2, 3), (2, 5), (3, 1), (3, -1), (3, 2), (3, -2), (3, 4), (4, 3)]
    )
    def test_ranks_match_oracle(self, p, q):
        values = oracle()["values"]
        pt = cable_pattern(p, q)
        for c in ["U", "T23", "-T23"]:
            assert rank(pt, companion(c)) == values[f"cable({p},{q})|{c}"]["total_rank"]


class TestMazur:
    def test_winding(self):
        assert mazur_pattern().winding_number == 1

    def test_unknotted(self):
        assert rank(mazur_pattern(), unknot_companion()) == 1

    def test_with_other_basepoints(self):
        t = MarkedTorus(P("1/8", "1/4"), P("1/4", "1/4"))
        assert mazur_pattern(t).winding_number == 1


def test_winding_counts_crossings_with_the_basepoint_segment():
    # sliding the line to the other side of both basepoints loses the crossing
    t = MarkedTorus()
    assert winding_number(CoverLoop([P("5/16", 0)], P(0, 1)), t) == 1
    assert winding_number(CoverLoop([P("7/16", 0)], P(0, 1)), t) == 0


words = st.text(alphabet="aAbB", min_size=1, max_size=3)


@settings(max_examples=12, deadline=None)
@given(words)
def test_pushed_patterns_are_valid_and_odd(word):
    pt = pushed_pattern(word)
    again = pattern_from_raw(pt.beta, pt.torus)
    assert again.winding_number == pt.winding_number
    d = assemble(pt, unknot_companion())
    n = minimize(d).intersection_count
    assert n >= 1 and n % 2 == 1
    assert minimize(straighten_beta(d)).intersection_count == 1
