from dataclasses import replace

import pytest
from hypothesis import assume, given, settings, strategies as st

from satfloer import (
    GradedCount,
    MinPosResult,
    TorusCurve,
    absolute_alexander,
    alexander_polynomial,
    assemble,
    minimize,
    relative_alexander,
    unknot_pattern,
)
from satfloer.errors import AsymmetricSpectrum, NotNullHomologous, NotUnit
from satfloer.gradings import normalize_unit, polynomial_product, substitute_power
from satfloer.harness import satellite_formula_holds

from conftest import COMPANIONS, PATTERNS, companion, oracle_entry, pattern


def result(p, c, seed=None):
    return minimize(assemble(pattern(p), companion(c)), seed)


class TestRelative:
    @pytest.mark.parametrize("p,c", [("cable(2,3)", "T23"), ("mazur", "-T23"), ("cable(3,1)", "4_1")])
    def test_antisymmetric_and_additive(self, p, c):
        r = result(p, c)
        xs = r.survivors
        for x in xs:
            assert relative_alexander(r, x, x) == 0
            for y in xs:
                assert relative_alexander(r, x, y) == -relative_alexander(r, y, x)
                for z in xs[:4]:
                    assert relative_alexander(r, x, z) == relative_alexander(r, x, y) + relative_alexander(r, y, z)

    def test_eliminated_generators_are_rejected(self):
        d = assemble(pattern("cable(2,3)"), companion("T23"))
        r = minimize(d)
        alive = {x.index for x in r.survivors}
        dead = next(x for x in d.data.crossings if x.index not in alive)
        with pytest.raises(NotNullHomologous):
            relative_alexander(r, dead, r.survivors[0])

    def test_independent_of_elimination_order(self):
        a = absolute_alexander(result("mazur", "T23"))
        for seed in range(4):
            assert absolute_alexander(result("mazur", "T23", seed)).entries == a.entries


class TestAbsolute:
    def test_trefoil(self):
        g = absolute_alexander(result("unknot", "T23"))
        assert g.dims() == {-1: 1, 0: 1, 1: 1}
        assert alexander_polynomial(g) == {-1: 1, 0: -1, 1: 1}
        assert g.total_dim == 3 and g.dim_at(2) == 0

    def test_signs_do_not_depend_on_input_orientation(self):
        # beta is read upward and the wrapping alpha component rightward, whatever the input says
        d = assemble(pattern("cable(2,3)"), companion("T23"))
        ref = sorted((x.point.x, x.point.y, x.sign) for x in minimize(d).survivors)
        for flipped in (
            replace(d, beta=d.beta.reversed()),
            replace(d, alpha=TorusCurve([c.reversed() for c in d.alpha.components])),
        ):
            assert sorted((x.point.x, x.point.y, x.sign) for x in minimize(flipped).survivors) == ref

    def test_asymmetric_spectrum(self):
        r = result("unknot", "T23")
        lopsided = MinPosResult(r.diagram, sorted(r.survivors, key=lambda x: x.height)[:2], r.log, r.initial_count)
        with pytest.raises(AsymmetricSpectrum):
            absolute_alexander(lopsided)

    def test_not_unit(self):
        with pytest.raises(NotUnit):
            alexander_polynomial(GradedCount({0: (3, 3)}))

    @pytest.mark.parametrize("p", PATTERNS)
    @pytest.mark.parametrize("c", COMPANIONS)
    def test_matches_oracle(self, p, c):
        g = absolute_alexander(result(p, c))
        e = oracle_entry(p, c)
        assert g.dims() == e["dims"]
        assert alexander_polynomial(g) == e["poly"]


class TestPolynomials:
    def test_product_and_substitution(self):
        tref = {-1: 1, 0: -1, 1: 1}
        assert substitute_power(tref, 2) == {-2: 1, 0: -1, 2: 1}
        assert polynomial_product(tref, {0: 1}) == tref
        assert polynomial_product({1: 1}, {-1: 1}) == {0: 1}

    def test_normalize(self):
        assert normalize_unit({2: -1, 3: 1, 4: -1}) == {-1: 1, 0: -1, 1: 1}

    @pytest.mark.parametrize("p", PATTERNS)
    @pytest.mark.parametrize("c", COMPANIONS)
    def test_satellite_formula(self, p, c):
        pk = alexander_polynomial(absolute_alexander(result(p, c)))
        pu = alexander_polynomial(absolute_alexander(result(p, "U")))
        k = alexander_polynomial(absolute_alexander(result("unknot", c)))
        assert satellite_formula_holds(pk, pu, k, pattern(p).winding_number)

    def test_formula_notices_a_wrong_winding(self):
        pk = alexander_polynomial(absolute_alexander(result("cable(2,3)", "T23")))
        pu = alexander_polynomial(absolute_alexander(result("cable(2,3)", "U")))
        k = {-1: 1, 0: -1, 1: 1}
        assert not satellite_formula_holds(pk, pu, k, 1)
        assert not satellite_formula_holds(None, pu, k, 2)


polys = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3).filter(bool), min_size=1, max_size=5)


@settings(max_examples=100)
@given(polys, st.integers(-5, 5))
def test_normalize_ignores_units(p, shift):
    assume(sum(p.values()) != 0)
    moved = {a + shift: -c for a, c in p.items()}
    assert normalize_unit(moved) == normalize_unit(p)


@settings(max_examples=100)
@given(polys, polys, st.integers(1, 4))
def test_substitution_is_multiplicative(p, q, n):
    assert substitute_power(polynomial_product(p, q), n) == polynomial_product(
        substitute_power(p, n), substitute_power(q, n)
    )
