"""Exact arithmetic and linear algebra kernel."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetapairs.gaussian import (
    GaussRat,
    I,
    SplittingFieldTooLarge,
    gauss_sqrt,
    gaussian_roots,
    poly_gcd,
    poly_squarefree_part,
    splits_over_gaussians,
)
from thetapairs.jordan import is_semisimple, jordan_decomposition, jordan_semisimple_part
from thetapairs.lattice import cokernel_structure, diagonal_of, smith_normal_form
from thetapairs.matrix import ExactMatrix


def mat(rows):
    return ExactMatrix.from_rows(rows)


# -- GaussRat --------------------------------------------------------------


def test_gauss_field_axioms_spot():
    a = GaussRat(Fraction(1, 2), 3)
    b = GaussRat(2, Fraction(-1, 5))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.inverse() == GaussRat(1)
    assert I * I == GaussRat(-1)


def test_gauss_sqrt_exact_cases():
    assert gauss_sqrt(GaussRat(-1)) == I or gauss_sqrt(GaussRat(-1)) == -I
    w = gauss_sqrt(GaussRat(0, 2))  # 2i = (1+i)^2
    assert w is not None and w * w == GaussRat(0, 2)
    assert gauss_sqrt(GaussRat(2)) is None  # sqrt(2) not in Q(i)
    assert gauss_sqrt(GaussRat(Fraction(9, 4))) == GaussRat(Fraction(3, 2))


rationals = st.fractions(min_value=-30, max_value=30, max_denominator=7)


@given(rationals, rationals)
@settings(max_examples=50, deadline=None)
def test_gauss_sqrt_of_squares(re, im):
    z = GaussRat(re, im)
    w = gauss_sqrt(z * z)
    assert w is not None and w * w == z * z


# -- kernel_basis ----------------------------------------------------------


def test_kernel_zero_matrix_gives_standard_basis():
    basis = ExactMatrix.zero(2, 2).kernel_basis()
    assert basis == [[GaussRat(1), GaussRat(0)], [GaussRat(0), GaussRat(1)]]


def test_kernel_rank_one_nilpotent():
    basis = mat([[0, 1], [0, 0]]).kernel_basis()
    assert basis == [[GaussRat(1), GaussRat(0)]]


def test_kernel_of_sl2_adjoint_action():
    # ad(diag(1,-1)) on the basis (e, h, f) of sl2, built by brute force:
    # [h,e]=2e, [h,h]=0, [h,f]=-2f.
    ad_h = mat([[2, 0, 0], [0, 0, 0], [0, 0, -2]])
    basis = ad_h.kernel_basis()
    assert len(basis) == 1
    assert basis[0] == [GaussRat(0), GaussRat(1), GaussRat(0)]


@given(st.lists(st.integers(-5, 5), min_size=12, max_size=12))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(entries):
    m = ExactMatrix(3, 4, [GaussRat(e) for e in entries])
    assert len(m.kernel_basis()) + m.rank() == m.cols
    for v in m.kernel_basis():
        assert all(x.is_zero() for x in m.apply(v))


# -- char_poly -------------------------------------------------------------


def test_char_poly_nilpotent():
    assert mat([[0, 1], [0, 0]]).char_poly() == [GaussRat(1), GaussRat(0), GaussRat(0)]


def test_char_poly_diag_2_3():
    assert mat([[2, 0], [0, 3]]).char_poly() == [GaussRat(1), GaussRat(-5), GaussRat(6)]


def test_char_poly_antidiagonal_instantiation():
    # [[0,x],[y,0]] at x=2, y=3: expansion by minors gives t^2 - 6.
    assert mat([[0, 2], [3, 0]]).char_poly() == [GaussRat(1), GaussRat(0), GaussRat(-6)]


def test_char_poly_conjugation_invariant():
    m = mat([[1, 2, 0], [0, 3, 1], [1, 1, 1]])
    p = mat([[1, 1, 0], [0, 1, 2], [0, 0, 1]])
    conj = p @ m @ p.inverse()
    assert conj.char_poly() == m.char_poly()


def test_solve_and_inverse_round_trip():
    m = mat([[1, 2], [3, 5]])
    x = m.solve([7, 11])
    assert m.apply(x) == [GaussRat(7), GaussRat(11)]
    assert m @ m.inverse() == ExactMatrix.identity(2)


# -- Smith normal form -----------------------------------------------------


def test_snf_identity():
    d, u, v = smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]]
    assert u == [[1, 0], [0, 1]]
    assert v == [[1, 0], [0, 1]]


def test_snf_single_entry():
    d, u, v = smith_normal_form([[2]])
    assert (d, u, v) == ([[2]], [[1]], [[1]])


def _rational_rank(m):
    # independent row-reduction oracle over Q
    work = [[Fraction(x) for x in row] for row in m]
    rank = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c] != 0:
                f = work[i][c] / work[rank][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def test_snf_swap_involution_coinvariants():
    # 1 - theta for the swap involution on Z^2
    m = [[1, -1], [-1, 1]]
    d, u, v = smith_normal_form(m)
    assert diagonal_of(d) == [1, 0]
    assert _rational_rank(m) == 1  # row-reduction oracle agrees: one zero factor


@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
@settings(max_examples=60, deadline=None)
def test_snf_properties(entries):
    m = [entries[0:3], entries[3:6]]
    d, u, v = smith_normal_form(m)
    diag = diagonal_of(d)
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0
    assert all(x >= 0 for x in diag)


def test_cokernel_structure_of_doubling():
    q = cokernel_structure([[2]])
    assert q.free_rank == 0 and q.torsion == (2,)
    q = cokernel_structure([[1, -1], [-1, 1]])
    assert q.free_rank == 1 and q.torsion == ()


# -- polynomial helpers ----------------------------------------------------


def test_poly_gcd_and_squarefree():
    # (x-1)^2 (x-2) has squarefree part (x-1)(x-2)
    p = [GaussRat(1), GaussRat(-4), GaussRat(5), GaussRat(-2)]
    sf = poly_squarefree_part(p)
    assert sf == [GaussRat(1), GaussRat(-3), GaussRat(2)]
    g = poly_gcd(p, sf)
    assert g == sf


def test_gaussian_roots_and_splitting():
    # x^2 + 1 = (x-i)(x+i)
    roots = gaussian_roots([GaussRat(1), GaussRat(0), GaussRat(1)])
    assert set(roots) == {I, -I}
    assert splits_over_gaussians([GaussRat(1), GaussRat(0), GaussRat(-2)]) is False
    with pytest.raises(SplittingFieldTooLarge):
        gaussian_roots([GaussRat(1), GaussRat(0), GaussRat(-2)])


# -- Jordan decomposition ---------------------------------------------------


def test_jordan_nilpotent_is_zero():
    assert jordan_semisimple_part(mat([[0, 1], [0, 0]])) == ExactMatrix.zero(2, 2)


def test_jordan_semisimple_fixed():
    m = mat([[1, 0], [0, 2]])
    assert jordan_semisimple_part(m) == m


def test_jordan_unipotent():
    m = mat([[1, 1], [0, 1]])
    assert jordan_semisimple_part(m) == ExactMatrix.identity(2)


def test_jordan_properties_on_conjugated_blocks():
    # conjugate of a 3x3 with eigenvalues 2, 2, i and one Jordan block
    block = mat([[2, 1, 0], [0, 2, 0], [0, 0, 0]]) + ExactMatrix.diagonal([0, 0, I])
    p = mat([[1, 2, 3], [0, 1, 4], [0, 0, 1]])
    m = p @ block @ p.inverse()
    ss, nil = jordan_decomposition(m)
    assert ss.commutator(m).is_zero()
    assert nil.is_nilpotent()
    assert (ss + nil) == m
    assert is_semisimple(ss)
    assert not is_semisimple(m)


def test_jordan_refuses_non_gaussian_spectrum():
    with pytest.raises(SplittingFieldTooLarge):
        jordan_semisimple_part(mat([[0, 2], [1, 0]]))  # eigenvalues +-sqrt(2)


def test_exp_nilpotent_exact():
    n = mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    e = n.exp_nilpotent()
    assert e == mat([[1, 1, Fraction(1, 2)], [0, 1, 1], [0, 0, 1]])
