"""Abelian planes, the tangent solver, stabilizer fibers, lattice models."""

import pytest

from thetapairs.gaussian import GaussRat, ZERO
from thetapairs.lattice import IntLattice
from thetapairs.pairs import MATRIX_CATALOG, CatalogError, realize
from thetapairs.slices import build_kw_section, is_regular
from thetapairs.stabilizers import (
    AbelianPlane,
    UnsupportedStabilizer,
    admissibility_condition,
    admissible_elements,
    centralizer_plane,
    character_on_element,
    lattice_model,
    stabilizer_fiber,
    tangent_space_solver,
    torus_fixed_points,
    TorusLatticeModel,
)


def a_combo(pair, coeffs):
    acc = [ZERO] * pair.dim_g
    for c, v in zip(coeffs, pair.a_basis):
        acc = [a + GaussRat(c) * b for a, b in zip(acc, v)]
    return acc


def test_centralizer_plane_of_generic_a_is_a():
    p = realize("splitA:n=2")
    plane = centralizer_plane(p, a_combo(p, [1, 3]))
    from thetapairs.matrix import coordinates_in_basis

    for v in plane.basis:
        assert coordinates_in_basis([list(w) for w in p.a_basis], list(v)) is not None


def test_centralizer_plane_nilpotent_contains_source():
    p = realize("splitA:n=1")
    section = build_kw_section(p)
    plane = centralizer_plane(p, section.e)
    from thetapairs.matrix import coordinates_in_basis

    assert coordinates_in_basis([list(w) for w in plane.basis],
                                list(section.e)) is not None


def test_plane_invariant_enforced():
    p = realize("splitA:n=2")
    # two non-commuting g1 vectors are rejected
    g1 = p.g1_basis_coords()
    with pytest.raises(CatalogError):
        AbelianPlane(p, [g1[0], g1[3]])


@pytest.mark.parametrize("spec,expected", [
    ("splitA:n=1", 1),   # 2 - 1
    ("splitA:n=2", 3),   # 5 - 2
    ("glgl:n=1", 1),
])
def test_tangent_dimension_examples(spec, expected):
    p = realize(spec)
    if spec == "glgl:n=1":
        section = build_kw_section(p)
        plane = centralizer_plane(p, section.e)
    else:
        plane = centralizer_plane(p, a_combo(p, [1, 3][: p.rank_r1]))
    rep = tangent_space_solver(p, plane)
    assert rep.solution_dimension == expected == rep.expected_dimension
    assert rep.evaluation_bijective


@pytest.mark.parametrize("spec", MATRIX_CATALOG)
def test_tangent_solver_at_regular_planes(spec):
    import random

    p = realize(spec)
    rng = random.Random(5)
    checked = 0
    while checked < 10:
        coeffs = [rng.randint(-6, 6) for _ in range(p.rank_r1)]
        x = a_combo(p, coeffs)
        if not is_regular(p, x):
            continue
        rep = tangent_space_solver(p, centralizer_plane(p, x))
        assert rep.passes
        checked += 1


def test_stabilizer_sl2_nilpotent_plane():
    p = realize("splitA:n=1")
    section = build_kw_section(p)
    fiber = stabilizer_fiber(p, centralizer_plane(p, section.e))
    assert fiber.identity_component_dim == 0
    assert fiber.component_count == 2
    mats = {m.entries for m in fiber.component_elements}
    from thetapairs.matrix import ExactMatrix

    assert ExactMatrix.identity(2).entries in mats
    assert ExactMatrix.identity(2).scale(GaussRat(-1)).entries in mats
    # alpha(+-I) = 1: central elements act trivially on every root space
    assert all(v == 1 for row in fiber.character_values for v in row)


def test_stabilizer_sl2_semisimple_plane():
    p = realize("splitA:n=1")
    fiber = stabilizer_fiber(p, centralizer_plane(p, a_combo(p, [1])))
    assert fiber.component_count == 2 and fiber.identity_component_dim == 0


def test_stabilizer_glgl1_scalars():
    p = realize("glgl:n=1")
    section = build_kw_section(p)
    fiber = stabilizer_fiber(p, centralizer_plane(p, section.e))
    assert fiber.identity_component_dim == 1
    assert fiber.component_count == 1


def test_stabilizer_unsupported():
    p = realize("splitA:n=2")
    with pytest.raises(UnsupportedStabilizer):
        stabilizer_fiber(p, centralizer_plane(p, a_combo(p, [1, 3])))


def test_torus_fixed_points_examples():
    sl2 = torus_fixed_points(lattice_model("sl2_split"))
    assert sl2.free_rank == 0 and sl2.torsion == (2,)
    pgl2 = torus_fixed_points(lattice_model("pgl2_split"))
    assert pgl2.component_order == 2
    diag = torus_fixed_points(lattice_model("diag_sl2"))
    assert diag.free_rank == 1 and diag.torsion == ()


def test_admissibility_contrast():
    rep_sl, adm_sl = admissible_elements(lattice_model("sl2_split"))
    assert rep_sl.component_order == 2 and len(adm_sl) == 2
    rep_pgl, adm_pgl = admissible_elements(lattice_model("pgl2_split"))
    assert rep_pgl.component_order == 2 and len(adm_pgl) == 1
    # the excluded element takes value -1 on the root
    values = {el.residues: character_on_element(rep_pgl, (1,), el)
              for el in rep_pgl.finite_elements()}
    assert values[(1,)] == (1, 2)  # exp(2 pi i /2) = -1
    assert admissibility_condition(rep_pgl, (1,), rep_pgl.finite_elements()[1]) == "excluded"


def test_identity_element_always_admissible():
    for name in ("sl2_split", "pgl2_split", "glgl1"):
        model = lattice_model(name)
        rep = torus_fixed_points(model)
        ident = rep.finite_elements()[0]
        assert all(r == 0 for r in ident.residues)
        for alpha in model.roots:
            assert admissibility_condition(rep, alpha, ident) == "admissible"


def test_fixed_points_invariant_under_unimodular_change():
    base = lattice_model("diag_sl2")
    rep = torus_fixed_points(base)
    # conjugate theta by a unimodular matrix
    u = [[1, 1], [0, 1]]
    u_inv = [[1, -1], [0, 1]]
    theta = base.theta_matrix()

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]

    conj = matmul(matmul(u, theta), u_inv)
    model2 = TorusLatticeModel("conjugated", IntLattice(2, tuple(map(tuple, conj))),
                               base.roots, base.isogeny_type)
    rep2 = torus_fixed_points(model2)
    assert (rep.free_rank, rep.torsion) == (rep2.free_rank, rep2.torsion)
