"""Fibers, census, dimension audits, and the diagonal comparison."""

import pytest

from thetapairs.gaussian import GaussRat, ZERO
from thetapairs.pairs import MATRIX_CATALOG, realize
from thetapairs.slices import ElementOfG1, NotRegular, build_kw_section, conjugate_ss_into_a
from thetapairs.fibers import (
    component_census,
    exhibit_fiber_conjugators,
    fiber_component_dimensions,
    fiber_over_regular,
    g0_weyl_lifts,
    mixed_degenerate_element,
    regular_ss_element,
)
from thetapairs.diagonal import diagonal_isomorphism_check


def a_combo(pair, coeffs):
    acc = [ZERO] * pair.dim_g
    for c, v in zip(coeffs, pair.a_basis):
        acc = [a + GaussRat(c) * b for a, b in zip(acc, v)]
    return acc


def test_fiber_rejects_non_regular():
    p = realize("splitA:n=2")
    with pytest.raises(NotRegular):
        fiber_over_regular(p, ElementOfG1.from_coords(p, [ZERO] * p.dim_g))


@pytest.mark.parametrize("spec", MATRIX_CATALOG)
def test_fiber_cardinalities(spec):
    pair = realize(spec)
    rss = regular_ss_element(pair)
    rep = fiber_over_regular(pair, rss)
    assert rep.cardinality == rep.wa_order  # trivial stabilizer
    assert rep.cardinality == rep.orbit_size_formula
    assert all(pt.split_characterization for pt in rep.fiber_points)

    section = build_kw_section(pair)
    nil = ElementOfG1.from_coords(pair, section.e)
    rep_n = fiber_over_regular(pair, nil)
    assert rep_n.cardinality == 1 == rep_n.orbit_size_formula

    deg = mixed_degenerate_element(pair)
    rep_d = fiber_over_regular(pair, deg)
    assert rep_d.cardinality == rep_d.orbit_size_formula


def test_glgl2_degenerate_fiber_is_four():
    # hyperoctahedral stabilizer of a repeated coordinate has order 2: 8/2 = 4
    pair = realize("glgl:n=2")
    deg = mixed_degenerate_element(pair)
    rep = fiber_over_regular(pair, deg)
    assert rep.wa_order == 8
    assert rep.stabilizer_order == 2
    assert rep.cardinality == 4
    # the component fiber strictly exceeds the literal split characterization
    literal = sum(1 for pt in rep.fiber_points if pt.split_characterization)
    assert literal == 2


def test_g0_lifts_cover_little_weyl_group():
    for spec in MATRIX_CATALOG:
        pair = realize(spec)
        lifts = g0_weyl_lifts(pair)
        from thetapairs.fibers import _wa_perms

        assert set(lifts) == set(_wa_perms(pair))
        theta = pair.theta_coords
        for m in lifts.values():
            assert theta @ m @ theta == m  # honest G0 elements


@pytest.mark.parametrize("spec", ["splitA:n=1", "splitA:n=2", "glgl:n=1",
                                  "glgl:n=2", "diag:sl2", "diag:sl3"])
def test_fiber_conjugators_single_orbit(spec):
    pair = realize(spec)
    rep = fiber_over_regular(pair, regular_ss_element(pair))
    conj = exhibit_fiber_conjugators(pair, rep)
    assert conj is not None
    assert len(conj) == rep.cardinality - 1
    section = build_kw_section(pair)
    rep_n = fiber_over_regular(pair, ElementOfG1.from_coords(pair, section.e))
    assert exhibit_fiber_conjugators(pair, rep_n) == []


@pytest.mark.parametrize("spec,points,groups,size", [
    ("splitA:n=1", 2, 1, 2),
    ("diag:sl2", 4, 2, 2),
    ("glgl:n=2", 24, 3, 8),
    ("diag:sl3", 36, 6, 6),
])
def test_component_census(spec, points, groups, size):
    pair = realize(spec)
    census = component_census(pair, regular_ss_element(pair))
    assert census.total_points == points
    assert census.group_count == groups
    assert census.wa_order == size
    assert all(len(g) == size for g in census.groups)


def test_census_rejects_mixed_elements():
    pair = realize("glgl:n=2")
    with pytest.raises(NotRegular):
        component_census(pair, mixed_degenerate_element(pair))


def test_dimension_audit_sl2_at_zero():
    # two components, each of dimension 1 - 1 + 1 = 1 = dim g1 - r1
    pair = realize("splitA:n=1")
    audit = fiber_component_dimensions(pair, [ZERO] * pair.dim_g)
    assert audit.component_count == 2
    for cls in audit.classes:
        assert cls.regular
        assert cls.audit_value == 1 == cls.expected


def test_dimension_audit_regular_point_single_component():
    pair = realize("splitA:n=2")
    x = a_combo(pair, [1, 3])
    audit = fiber_component_dimensions(pair, x)
    assert audit.component_count == 1
    assert audit.passes()


@pytest.mark.parametrize("spec", MATRIX_CATALOG)
def test_dimension_audit_zero_and_degenerate(spec):
    pair = realize(spec)
    audit0 = fiber_component_dimensions(pair, [ZERO] * pair.dim_g)
    assert audit0.passes()
    # component count at 0 equals the number of regular Borel classes
    from thetapairs.involutions import detect_regular_borels

    nreg = sum(1 for c in detect_regular_borels(pair) if c.regular)
    assert audit0.component_count == nreg
    deg = mixed_degenerate_element(pair)
    ss, _ = deg.jordan_parts()
    ss1 = conjugate_ss_into_a(pair, ss).apply(ss)
    audit_d = fiber_component_dimensions(pair, ss1)
    assert audit_d.passes()
    assert audit_d.component_count >= 1


def test_glgl2_degenerate_centralizer_factor():
    # centralizer at a point with one vanishing coordinate contains a
    # glgl:n=1-type factor; the audit still passes
    pair = realize("glgl:n=2")
    x = a_combo(pair, [1, 0])
    audit = fiber_component_dimensions(pair, x)
    assert audit.passes()
    assert audit.component_count == 2


@pytest.mark.parametrize("spec", ["diag:sl2", "diag:sl3"])
def test_diagonal_isomorphism(spec):
    pair = realize(spec)
    assert diagonal_isomorphism_check(pair, n_samples=10) == 10
