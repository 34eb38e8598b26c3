"""Elements of g1, the quotient map, and Kostant-Weierstrass slices."""

import random

import pytest

from thetapairs.gaussian import GaussRat, I, ZERO
from thetapairs.matrix import ExactMatrix
from thetapairs.pairs import MATRIX_CATALOG, realize
from thetapairs.slices import (
    ConjugationOutsideField,
    ElementOfG1,
    NotInG1,
    build_kw_section,
    chi1,
    conjugate_ss_into_a,
    is_regular,
    kw_audit,
    kw_solve,
)


def a_combo(pair, coeffs):
    acc = [ZERO] * pair.dim_g
    for c, v in zip(coeffs, pair.a_basis):
        acc = [a + GaussRat(c) * b for a, b in zip(acc, v)]
    return acc


def test_membership_validation():
    p = realize("splitA:n=1")
    with pytest.raises(NotInG1):
        ElementOfG1.from_matrix(p, ExactMatrix.from_rows([[0, 1], [-1, 0]]))
    x = ElementOfG1.from_matrix(p, ExactMatrix.from_rows([[1, 0], [0, -1]]))
    assert p.in_g1(x.coords)


def test_chi1_blowup_coordinates():
    # x = (c d; d -c) at c=1, d=0: the invariant is -det = c^2 + d^2 = 1,
    # i.e. the product xy in the coordinates x = c + id, y = c - id
    p = realize("splitA:n=1")
    x = ElementOfG1.from_matrix(p, ExactMatrix.from_rows([[1, 0], [0, -1]]))
    assert chi1(p, x) == (GaussRat(-1),)
    x2 = ElementOfG1.from_matrix(p, ExactMatrix.from_rows([[1, 2], [2, -1]]))
    assert chi1(p, x2) == (GaussRat(-5),)  # -(c^2+d^2) with c=1, d=2


def test_chi1_zero():
    for spec in ("splitA:n=2", "glgl:n=2", "diag:sl3"):
        p = realize(spec)
        zero = ElementOfG1.from_coords(p, [ZERO] * p.dim_g)
        assert chi1(p, zero) == tuple([GaussRat(0)] * p.rank_r1)


def test_chi1_glgl_block_product():
    # X = I2, Y = diag(2,3): char poly of XY has coefficients (-5, 6)
    p = realize("glgl:n=2")
    entries = {(0, 2): 2, (1, 3): 3, (2, 0): 1, (3, 1): 1}
    m = ExactMatrix(4, 4, [GaussRat(entries.get((i, j), 0))
                           for i in range(4) for j in range(4)])
    x = ElementOfG1.from_matrix(p, m)
    assert chi1(p, x) == (GaussRat(-5), GaussRat(6))


def test_is_regular_examples():
    p = realize("splitA:n=2")
    assert not is_regular(p, [ZERO] * p.dim_g)
    assert is_regular(p, a_combo(p, [1, 3]))  # distinct eigenvalue coordinates
    section = build_kw_section(p)
    assert is_regular(p, section.e)


def test_jordan_parts_stay_in_g1():
    p = realize("splitA:n=2")
    from thetapairs.fibers import mixed_degenerate_element

    x = mixed_degenerate_element(p)
    ss, nil = x.jordan_parts()
    assert p.in_g1(ss) and p.in_g1(nil)
    assert p.theta_apply(ss) == [-c for c in ss]
    nil_m = p.from_coords(nil)
    assert nil_m.is_nilpotent()


def test_kw_section_sl2_explicit():
    # e is proportional to (1 i; i -1): a symmetric nilpotent
    p = realize("splitA:n=1")
    section = build_kw_section(p)
    e_m = p.from_coords(section.e)
    want = ExactMatrix.from_rows([[1, I], [I, -1]])
    assert e_m == want or e_m == want.scale(GaussRat(-1))
    assert e_m.is_nilpotent()
    assert is_regular(p, section.e)


def test_kw_section_glgl1_linear():
    p = realize("glgl:n=1")
    section = build_kw_section(p)
    values = [chi1(p, section.slice_point([t]))[0] for t in range(4)]
    diffs = {values[k + 1] - values[k] for k in range(3)}
    assert len(diffs) == 1  # chi1 is linear along the one-dimensional slice
    assert not next(iter(diffs)).is_zero()


def test_kw_triangular_solve_sl3():
    p = realize("splitA:n=2")
    section = build_kw_section(p)
    target = (GaussRat(3), GaussRat(-7))
    coeffs = kw_solve(section, target)
    assert chi1(p, section.slice_point(coeffs)) == target


@pytest.mark.parametrize("spec", MATRIX_CATALOG)
def test_kw_audit_all_pairs(spec):
    audit = kw_audit(realize(spec), n_samples=15, n_round_trips=8)
    assert audit["samples_regular"] == 15
    assert audit["round_trips"] == 8
    assert audit["kappa_at_zero_is_e"]


def test_chi1_invariant_under_g0_conjugation():
    # conjugating by exponentials of g0 nilpotents and by little-Weyl lifts
    from thetapairs.fibers import g0_weyl_lifts

    for spec in ("splitA:n=2", "glgl:n=2", "diag:sl2"):
        p = realize(spec)
        x = a_combo(p, [1, 3][: p.rank_r1])
        base = chi1(p, x)
        fund = p.fund_roots
        rng = random.Random(11)
        conjugators = list(g0_weyl_lifts(p).values())[:3]
        count = 0
        for k in fund.positive:
            part = p.g0_part(fund.root_vectors[k])
            if all(c.is_zero() for c in part):
                continue
            s = GaussRat(rng.randint(1, 3))
            conjugators.append(p.ad([s * c for c in part]).exp_nilpotent())
            count += 1
            if count >= 5:
                break
        assert conjugators
        for g in conjugators:
            assert chi1(p, g.apply(x)) == base


def test_conjugation_into_a_over_the_field():
    # (7 24; 24 -7) has eigenvalues +-25 and eigenvector norms 900 and 1600,
    # both squares, so an exact special-orthogonal conjugation exists
    p = realize("splitA:n=1")
    m = ExactMatrix.from_rows([[7, 24], [24, -7]])
    ad_g = conjugate_ss_into_a(p, p.to_coords(m))
    image = ad_g.apply(p.to_coords(m))
    from thetapairs.matrix import coordinates_in_basis

    assert coordinates_in_basis([list(v) for v in p.a_basis], image) is not None


def test_conjugation_failures_are_typed():
    p = realize("splitA:n=1")
    # eigenvalues +-sqrt(2): spectrum outside Q(i)
    bad_spectrum = ExactMatrix.from_rows([[1, 1], [1, -1]])
    with pytest.raises(ConjugationOutsideField):
        conjugate_ss_into_a(p, p.to_coords(bad_spectrum))
    # eigenvalues +-1 but eigenvector norms 2: normalization outside Q(i)
    bad_norm = ExactMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ConjugationOutsideField):
        conjugate_ss_into_a(p, p.to_coords(bad_norm))


def test_kappa_zero_is_nonzero_regular_nilpotent():
    for spec in MATRIX_CATALOG:
        p = realize(spec)
        section = build_kw_section(p)
        coeffs = kw_solve(section, [ZERO] * p.rank_r1)
        kappa0 = section.slice_point(coeffs)
        assert kappa0 == section.e
        assert any(not c.is_zero() for c in kappa0)
        assert p.from_coords(kappa0).is_nilpotent()
        assert is_regular(p, kappa0)
