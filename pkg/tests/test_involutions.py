"""Subgroup chains, split-Borel torsors, regular classes, canonical involution."""

import pytest

from thetapairs.involutions import (
    MissingCompactness,
    canonical_involution,
    classify_roots,
    compute_subgroups,
    detect_regular_borels,
    enumerate_split_borels,
)
from thetapairs.matrix import ExactMatrix
from thetapairs.pairs import MATRIX_CATALOG, realize


def test_classify_roots_examples():
    diag = classify_roots(realize("diag:sl2").fund_roots)
    assert len(diag["complex"]) == 4 and not diag["real"]
    sl2 = classify_roots(realize("splitA:n=1").fund_roots)
    assert len(sl2["imaginary_noncompact"]) == 2
    g2 = classify_roots(realize("g2split").comb)
    assert len(g2["imaginary_noncompact"]) == 8
    assert len(g2["imaginary_compact"]) == 4


def test_classify_complex_is_fixed_point_free_involution():
    for spec in ("diag:sl3", "splitA:n=3"):
        rdi = realize(spec).fund_roots
        parts = classify_roots(rdi)
        assert len(parts["complex"]) % 2 == 0
        for k in parts["complex"]:
            img = rdi.theta_perm[k]
            assert img != k and rdi.theta_perm[img] == k


def test_classify_requires_compactness():
    e6 = realize("e6qs")
    with pytest.raises(MissingCompactness):
        classify_roots(e6.comb)


@pytest.mark.parametrize("spec,w,wt,w0,wa", [
    ("splitA:n=1", 2, 2, 1, 2),
    ("splitA:n=2", 6, 2, 2, 6),
    ("splitA:n=3", 24, 8, 4, 24),
    ("glgl:n=1", 2, 2, 1, 2),
    ("glgl:n=2", 24, 24, 4, 8),
    ("diag:sl2", 4, 2, 2, 2),
    ("diag:sl3", 36, 6, 6, 6),
])
def test_subgroup_orders(spec, w, wt, w0, wa):
    rep = compute_subgroups(realize(spec))
    assert (rep.W_order, rep.W_theta_order, rep.W0_order, rep.Wa_order) == (w, wt, w0, wa)


def test_e6_subgroup_orders_and_indices():
    rep = compute_subgroups(realize("e6qs"))
    assert rep.W_order == 51840
    assert rep.W_theta_order == 1152
    assert rep.W0_order == 384
    assert rep.indices == (3, 45)


def test_g2_subgroups():
    rep = compute_subgroups(realize("g2split"))
    assert (rep.W_order, rep.W_theta_order, rep.W0_order) == (12, 12, 4)
    assert rep.indices[0] == 3


def test_w0_lies_in_theta_fixed_subgroup():
    for spec in ("splitA:n=2", "glgl:n=2", "diag:sl3"):
        pair = realize(spec)
        rep = compute_subgroups(pair)
        fixed = set(rep.W_theta_perms)
        assert all(p in fixed for p in rep.W0_perms)


@pytest.mark.parametrize("spec,total,split", [
    ("splitA:n=1", 2, 2),
    ("diag:sl2", 4, 2),
    ("glgl:n=2", 24, 8),
])
def test_split_borel_counts(spec, total, split):
    pair = realize(spec)
    rep = compute_subgroups(pair)
    assert rep.W_order == total
    borels = enumerate_split_borels(pair)
    assert len(borels) == split == rep.Wa_order


def test_split_borel_torsor_whole_catalog():
    for spec in MATRIX_CATALOG:
        enumerate_split_borels(realize(spec))  # raises if not a torsor


@pytest.mark.parametrize("spec,classes,regular", [
    ("g2split", 3, 1),
    ("splitA:n=1", 2, 2),
    ("splitA:n=2", 1, 1),
    ("splitA:n=3", 2, 2),
    ("glgl:n=1", 2, 2),
    ("glgl:n=2", 6, 2),
    ("diag:sl2", 1, 1),
    ("diag:sl3", 1, 1),
])
def test_regular_borel_classes(spec, classes, regular):
    out = detect_regular_borels(realize(spec))
    assert len(out) == classes
    assert sum(1 for c in out if c.regular) == regular
    # the compact-simple-root shortcut always agrees with the semantic test
    assert all(c.shortcut_regular == c.regular for c in out)
    # negative classes carry an exact certificate
    for c in out:
        if not c.regular:
            assert c.simple_compact_witness is not None


def test_regular_class_count_bounds():
    for spec in MATRIX_CATALOG + ("g2split",):
        pair = realize(spec)
        rep = compute_subgroups(pair)
        out = detect_regular_borels(pair, report=rep)
        nreg = sum(1 for c in out if c.regular)
        assert 1 <= nreg <= rep.indices[0]


def test_canonical_involution_sl2_is_minus_one():
    theta_can = canonical_involution(realize("splitA:n=1"))
    assert theta_can == ExactMatrix.from_rows([[-1]])


def test_canonical_involution_diag_is_swap_type():
    p = realize("diag:sl2")
    theta_can = canonical_involution(p)
    # eigenvalue +1 space has dimension rank - r1 = 1
    fixed = (theta_can - ExactMatrix.identity(2)).kernel_basis()
    anti = (theta_can + ExactMatrix.identity(2)).kernel_basis()
    assert len(fixed) == 1 and len(anti) == 1


def test_canonical_involution_glgl_eigenspaces():
    p = realize("glgl:n=1")
    theta_can = canonical_involution(p)
    anti = (theta_can + ExactMatrix.identity(p.rank_g)).kernel_basis()
    assert len(anti) == p.rank_r1 == 1


def test_canonical_involution_well_defined_everywhere():
    for spec in MATRIX_CATALOG:
        canonical_involution(realize(spec))  # asserts bitwise equality inside
