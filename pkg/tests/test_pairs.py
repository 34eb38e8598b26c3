"""Catalog realizations: dimensions, decompositions, eager validation."""

from collections import Counter

import pytest

from thetapairs.gaussian import GaussRat
from thetapairs.liealg import vec_is_zero
from thetapairs.pairs import (
    CatalogError,
    PairSpec,
    realize,
    root_decomposition,
    split_root_decomposition,
)


def test_pair_spec_grammar():
    assert PairSpec.parse("splitA:n=2") == PairSpec("splitA", n=2)
    assert PairSpec.parse("glgl:n=1") == PairSpec("glgl", n=1)
    assert PairSpec.parse("diag:sl3") == PairSpec("diag", base="sl3")
    assert PairSpec.parse("g2split") == PairSpec("g2split")
    assert PairSpec.parse("e6qs").render() == "e6qs"
    for bad in ("splitA:n=0", "diag:so5", "x7", "glgl:n=x"):
        with pytest.raises(CatalogError):
            PairSpec.parse(bad)


def test_splitA_n2_dimensions():
    # (sl(3), so(3)): dim g = 8, dim g0 = 3, dim g1 = 5, r1 = 2
    p = realize("splitA:n=2")
    assert p.dim_g == 8
    assert p.dim_g0 == 3
    assert p.dim_g1 == 5
    assert p.rank_r1 == 2


def test_glgl_n1_dimensions():
    # gl(2) with off-diagonal g1 of dimension 2, r1 = 1
    p = realize("glgl:n=1")
    assert p.dim_g == 4
    assert p.dim_g1 == 2
    assert p.rank_r1 == 1


def test_diag_sl2_identification():
    # g1 = {(X, -X)} is a copy of sl2, r1 = 1
    p = realize("diag:sl2")
    assert p.dim_g1 == 3
    assert p.rank_r1 == 1
    # the swap exchanges the factors: theta of (X, X) is itself
    for v in p.g0_basis_coords():
        assert p.theta_apply(v) == v


def test_diag_sl2_roots_all_complex():
    p = realize("diag:sl2")
    fund = root_decomposition(p)
    assert fund.nroots == 2 * 2
    assert all(fund.classify(k) == "complex" for k in range(fund.nroots))


def test_sl2_so2_roots_imaginary_noncompact():
    # relative to the theta-fixed torus both roots are imaginary noncompact
    p = realize("splitA:n=1")
    fund = root_decomposition(p)
    assert fund.nroots == 2
    assert all(fund.classify(k) == "imaginary" for k in range(2))
    assert set(fund.compactness.values()) == {"noncompact"}


def test_glgl_n1_compactness_pattern():
    p = realize("glgl:n=1")
    fund = root_decomposition(p)
    assert fund.nroots == 2
    assert all(fund.classify(k) == "imaginary" for k in range(2))
    # both root spaces are the off-diagonal units, hence in g1
    assert set(fund.compactness.values()) == {"noncompact"}


def test_glgl_n2_compactness_split_by_blocks():
    p = realize("glgl:n=2")
    fund = root_decomposition(p)
    counts = Counter(fund.compactness.values())
    assert counts == {"noncompact": 8, "compact": 4}


def test_torus_decomposition_bookkeeping():
    for spec in ("splitA:n=2", "glgl:n=1", "diag:sl2"):
        p = realize(spec)
        t = p.t_split_basis
        t0 = sum(1 for v in t if p.in_g0(v))
        # t = t0 + a with the g1 part exactly the Cartan subspace
        assert t0 + p.rank_r1 == p.rank_g
        split = split_root_decomposition(p)
        assert split.nroots + p.rank_g == p.dim_g


def test_quasi_split_witness_regular_element():
    import random

    for spec in ("splitA:n=2", "glgl:n=2", "diag:sl3"):
        p = realize(spec)
        rng = random.Random(7)
        found = False
        for _ in range(8):
            x = p.sample_a_element(rng)
            if vec_is_zero(x):
                continue
            if p.centralizer_dim(x) == p.rank_g:
                found = True
                break
        assert found


def test_bracket_theta_automorphism_spot():
    p = realize("splitA:n=2")
    import random

    rng = random.Random(3)
    for _ in range(10):
        x = [GaussRat(rng.randint(-4, 4)) for _ in range(p.dim_g)]
        y = [GaussRat(rng.randint(-4, 4)) for _ in range(p.dim_g)]
        lhs = p.theta_apply(p.bracket(x, y))
        rhs = p.bracket(p.theta_apply(x), p.theta_apply(y))
        assert lhs == rhs


def test_combinatorial_entries():
    g2 = realize("g2split")
    assert not g2.matrix_level
    assert g2.comb.datum.label == "G2"
    counts = Counter(g2.comb.compactness.values())
    assert counts == {"noncompact": 8, "compact": 4}
    e6 = realize("e6qs")
    assert e6.comb.compactness is None
    assert e6.comb.w0_input_order == 384
    with pytest.raises(CatalogError):
        e6.require_matrix_level()
