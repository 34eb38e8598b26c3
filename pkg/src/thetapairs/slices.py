"""Elements of g1, the categorical quotient, and Kostant-Weierstrass slices.

The quotient map chi1 is realized by concrete invariant polynomials per
family (characteristic-polynomial coefficients; coefficients of the block
product for glgl), the slice by a normal sl2-triple through the canonical
regular nilpotent of the first regular Borel class, and the slice inverse
by a sequential one-variable solve down the weight grading, verified
exactly at the end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .gaussian import GaussRat, ONE, ZERO, SplittingFieldTooLarge, gaussian_roots
from .jordan import jordan_semisimple_part
from .liealg import Vector, gvec, vec_is_zero, weight_decomposition
from .matrix import ExactMatrix, coordinates_in_basis, intersect_spans
from .involutions import detect_regular_borels
from .pairs import CatalogError, SymmetricPairRealization


class NotRegular(Exception):
    pass


class NotInG1(Exception):
    pass


class TripleNotFound(Exception):
    pass


class ConjugationOutsideField(Exception):
    """The semisimple part cannot be moved into the pinned Cartan subspace
    by an exact Q(i) conjugation."""


@dataclass
class ElementOfG1:
    pair: SymmetricPairRealization
    coords: Vector
    _ss: Optional[Vector] = field(default=None, repr=False)
    _nil: Optional[Vector] = field(default=None, repr=False)

    @staticmethod
    def from_matrix(pair: SymmetricPairRealization, m: ExactMatrix) -> "ElementOfG1":
        coords = pair.frame.maybe_coords(m)
        if coords is None or not pair.in_g1(coords):
            raise NotInG1("matrix does not lie in g1")
        return ElementOfG1(pair, coords)

    @staticmethod
    def from_coords(pair: SymmetricPairRealization, coords: Sequence) -> "ElementOfG1":
        coords = gvec(coords)
        if not pair.in_g1(coords):
            raise NotInG1("coordinates do not lie in g1")
        return ElementOfG1(pair, coords)

    @property
    def matrix(self) -> ExactMatrix:
        return self.pair.from_coords(self.coords)

    def jordan_parts(self) -> Tuple[Vector, Vector]:
        """Coordinates of (ss, nil); both are asserted to lie in g1."""
        if self._ss is None:
            m = self.matrix
            ss_m = jordan_semisimple_part(m)
            ss = self.pair.to_coords(ss_m)
            nil = [a - b for a, b in zip(self.coords, ss)]
            if not self.pair.in_g1(ss):
                raise AssertionError("semisimple part left g1")
            if not self.pair.in_g1(nil):
                raise AssertionError("nilpotent part left g1")
            self._ss, self._nil = ss, nil
        return self._ss, self._nil


# -- regularity and the quotient map -----------------------------------------


def is_regular(pair: SymmetricPairRealization, x) -> bool:
    """dim ker(ad x on g) == rank(g); valid for quasi-split pairs."""
    coords = x.coords if isinstance(x, ElementOfG1) else gvec(x)
    return len(pair.ad(coords).kernel_basis()) == pair.rank_g


def chi1(pair: SymmetricPairRealization, x) -> Tuple[GaussRat, ...]:
    """The categorical quotient g1 -> a/W_a through concrete invariants.

    splitA: non-leading char-poly coefficients of x (the vanishing trace
    coefficient dropped); glgl: non-leading coefficients of the block
    product; diag: char-poly coefficients of the g0 component.  Length is
    always the rank r1.
    """
    coords = x.coords if isinstance(x, ElementOfG1) else gvec(x)
    m = pair.from_coords(coords)
    family = pair.spec.family
    if family == "splitA":
        poly = m.char_poly()
        assert poly[1].is_zero()
        return tuple(poly[2:])
    if family == "glgl":
        n = pair.spec.n
        top = ExactMatrix(n, n, [m[i, n + j] for i in range(n) for j in range(n)])
        bot = ExactMatrix(n, n, [m[n + i, j] for i in range(n) for j in range(n)])
        return tuple((top @ bot).char_poly()[1:])
    if family == "diag":
        k = m.rows // 2
        block = ExactMatrix(k, k, [m[i, j] for i in range(k) for j in range(k)])
        poly = block.char_poly()
        assert poly[1].is_zero()
        return tuple(poly[2:])
    raise CatalogError(f"{pair.pair_id}: chi1 needs a matrix realization")


# -- Kostant-Weierstrass section ----------------------------------------------


@dataclass
class KWSection:
    pair: SymmetricPairRealization
    e: Vector
    h: Vector
    f: Vector
    v_basis: List[Vector]          # ordered by descending ad(h) weight
    v_weights: List[GaussRat]
    borel_perm: bytes              # the regular theta-stable Borel class used

    def slice_point(self, coeffs: Sequence) -> Vector:
        x = list(self.e)
        for c, v in zip(gvec(coeffs), self.v_basis):
            x = [a + c * b for a, b in zip(x, v)]
        return x


def normal_triple_through(pair: SymmetricPairRealization, e: Vector,
                          h_space: Sequence[Vector], f_space: Sequence[Vector]):
    """Complete a nilpotent e to a triple (e, h, f) with h in span(h_space)
    and f in span(f_space); raises TripleNotFound when inconsistent."""
    # solve [h, e] = 2e with h in the given space
    cols = [pair.bracket(hv, e) for hv in h_space]
    target = [GaussRat(2) * c for c in e]
    sol = ExactMatrix.from_columns(cols).solve(target)
    if sol is None:
        raise TripleNotFound("no h with [h,e] = 2e in the allowed space")
    h = [ZERO] * pair.dim_g
    for c, hv in zip(sol, h_space):
        h = [a + c * b for a, b in zip(h, hv)]
    # solve [h, f] = -2f and [e, f] = h with f in span(f_space)
    ad_h = pair.ad(h)
    ad_e = pair.ad(e)
    rows = []
    rhs = []
    fcols = [gvec(v) for v in f_space]
    cond1 = [[sum((ad_h[i, j] * v[j] for j in range(pair.dim_g)), ZERO)
              + GaussRat(2) * v[i] for v in fcols] for i in range(pair.dim_g)]
    cond2 = [[sum((ad_e[i, j] * v[j] for j in range(pair.dim_g)), ZERO)
              for v in fcols] for i in range(pair.dim_g)]
    mat = ExactMatrix.from_rows(cond1 + cond2)
    target = [ZERO] * pair.dim_g + list(h)
    sol = mat.solve(target)
    if sol is None:
        raise TripleNotFound("triple equations for f are inconsistent")
    f = [ZERO] * pair.dim_g
    for c, v in zip(sol, fcols):
        f = [a + c * b for a, b in zip(f, v)]
    # exact triple relations
    assert pair.bracket(h, e) == [GaussRat(2) * c for c in e]
    assert pair.bracket(h, f) == [GaussRat(-2) * c for c in f]
    assert pair.bracket(e, f) == h
    return h, f


def build_kw_section(pair: SymmetricPairRealization, seed: int = 0) -> KWSection:
    """Slice e + v for the canonical regular nilpotent of the first regular
    Borel class: h solved inside the fundamental t0, f from the triple
    equations inside g1, v = z_{g1}(f)."""
    pair.require_matrix_level()
    classes = detect_regular_borels(pair, seed=seed)
    reg = next(c for c in classes if c.regular)
    fund = pair.fund_roots
    w = reg.rep_perm
    base_pos = list(fund.positive)
    simple_base = fund.simple_indices_of(base_pos)
    simples = [w[s] for s in simple_base]
    e = [ZERO] * pair.dim_g
    seen = set()
    for s in simples:
        if s in seen:
            continue
        seen.add(s)
        seen.add(fund.theta_perm[s])
        part = pair.g1_part(fund.root_vectors[s])
        e = [a + b for a, b in zip(e, part)]
    if not is_regular(pair, e):
        raise TripleNotFound("canonical nilpotent of the regular class is not regular")

    # h must come from im(ad e) (Jacobson-Morozov), which kills any central
    # ambiguity in t0
    t0 = [v for v in _theta_plus_basis(pair, fund.torus)]
    ad_e = pair.ad(e)
    image = [ad_e.column(j) for j in range(pair.dim_g)]
    h_space = intersect_spans([list(v) for v in t0], image)
    h, f = normal_triple_through(pair, e, h_space, pair.g1_basis_coords())
    if not pair.in_g0(h):
        raise TripleNotFound("h escaped g0")
    if not (pair.in_g1(e) and pair.in_g1(f)):
        raise TripleNotFound("triple is not normal")

    v_space = pair.frame.centralizer([f], ambient=pair.g1_basis_coords())
    if len(v_space) != pair.rank_r1:
        raise TripleNotFound(
            f"z_(g1)(f) has dimension {len(v_space)}, expected r1 = {pair.rank_r1}")
    # diagonalize ad(h) on v; weights are the (negated, doubled) exponents
    decomposition = weight_decomposition(pair.frame, [h], ambient=v_space)
    graded: List[Tuple[GaussRat, Vector]] = []
    for wt, space in decomposition:
        for vec in space:
            graded.append((wt[0], vec))
    graded.sort(key=lambda p: p[0].sort_key(), reverse=True)
    v_basis = [vec for _, vec in graded]
    v_weights = [wt for wt, _ in graded]
    return KWSection(pair, e, h, f, v_basis, v_weights, w)


def _theta_plus_basis(pair, vectors):
    from .involutions import theta_eigen_basis

    return theta_eigen_basis(pair, vectors, +1)


def kw_solve(section: KWSection, target: Sequence) -> Vector:
    """The unique slice coefficients with chi1(e + sum c_i v_i) = target.

    Solves one coordinate at a time down the weight grading; each step is
    linear in the next unknown because the invariants are triangular with
    respect to the slice grading.  The solution is verified exactly.
    """
    pair = section.pair
    target = gvec(target)
    r = pair.rank_r1
    if len(target) != r:
        raise ValueError(f"quotient points have length {r}")
    coeffs: List[GaussRat] = [ZERO] * r
    for j in range(r):
        base = list(coeffs)
        base[j] = ZERO
        v0 = chi1(pair, section.slice_point(base))[j]
        base[j] = ONE
        v1 = chi1(pair, section.slice_point(base))[j]
        slope = v1 - v0
        if slope.is_zero():
            raise TripleNotFound("slice solve: invariant not linear in its coordinate")
        coeffs[j] = (target[j] - v0) / slope
    if chi1(pair, section.slice_point(coeffs)) != tuple(target):
        raise TripleNotFound("slice solve verification failed")
    return coeffs


def kw_audit(pair: SymmetricPairRealization, seed: int = 0,
             n_samples: int = 50, n_round_trips: int = 20) -> dict:
    """The slice properties: samples regular, chi1 injective on them, and
    quotient targets round-tripping through the slice solve."""
    section = build_kw_section(pair, seed=seed)
    rng = random.Random(0x5EED + seed)
    seen = {}
    sampled = set()
    regular_count = 0
    while len(sampled) < n_samples:
        coeffs = tuple(GaussRat(rng.randint(-40, 40), rng.randint(-3, 3))
                       for _ in range(pair.rank_r1))
        if coeffs in sampled:
            continue
        sampled.add(coeffs)
        x = section.slice_point(coeffs)
        if not is_regular(pair, x):
            raise AssertionError("slice sample is not regular")
        regular_count += 1
        key = chi1(pair, x)
        if key in seen:
            raise AssertionError("chi1 is not injective on the slice")
        seen[key] = coeffs
    round_trips = 0
    for _ in range(n_round_trips):
        target = tuple(GaussRat(rng.randint(-9, 9), rng.randint(-2, 2))
                       for _ in range(pair.rank_r1))
        coeffs = kw_solve(section, target)
        assert chi1(pair, section.slice_point(coeffs)) == target
        round_trips += 1
    # the section at 0: kappa(0) = e, a nonzero regular nilpotent
    zero_coeffs = kw_solve(section, [ZERO] * pair.rank_r1)
    kappa0 = section.slice_point(zero_coeffs)
    assert kappa0 == section.e
    assert not vec_is_zero(kappa0)
    assert pair.from_coords(kappa0).is_nilpotent()
    assert is_regular(pair, kappa0)
    return {
        "samples_regular": regular_count,
        "chi1_injective_on": len(seen),
        "round_trips": round_trips,
        "kappa_at_zero_is_e": True,
        "kappa_at_zero_nonzero": True,
    }


# -- moving semisimple parts into the pinned Cartan subspace -------------------


def conjugate_ss_into_a(pair: SymmetricPairRealization, ss: Vector):
    """An Ad(g) (as a coordinate matrix, g in G0) with Ad(g) ss in a.

    Raises ConjugationOutsideField when eigenvalues or the needed square
    roots or normalizations do not exist in Q(i).
    """
    if coordinates_in_basis([list(v) for v in pair.a_basis], list(ss)) is not None:
        return ExactMatrix.identity(pair.dim_g)
    family = pair.spec.family
    m = pair.from_coords(ss)
    try:
        if family == "splitA":
            g = _orthogonal_diagonalizer(m)
        elif family == "glgl":
            g = _glgl_diagonalizer(pair, m)
        elif family == "diag":
            g = _diag_diagonalizer(pair, m)
        else:
            raise CatalogError(f"{pair.pair_id}: no conjugation solver")
    except SplittingFieldTooLarge as exc:
        raise ConjugationOutsideField(str(exc)) from exc
    ad_g = _ad_of_group_element(pair, g)
    image = ad_g.apply(ss)
    if coordinates_in_basis([list(v) for v in pair.a_basis], image) is None:
        raise ConjugationOutsideField("conjugation missed the Cartan subspace")
    theta_c = pair.theta_coords
    if theta_c @ ad_g @ theta_c != ad_g:
        raise AssertionError("conjugator is not theta-fixed")
    return ad_g


def _ad_of_group_element(pair, g: ExactMatrix) -> ExactMatrix:
    g_inv = g.inverse()
    cols = [pair.to_coords(g @ b @ g_inv) for b in pair.frame.basis]
    return ExactMatrix.from_columns(cols)


def _eigen_data(m: ExactMatrix):
    lams = sorted(set(gaussian_roots(m.char_poly())), key=GaussRat.sort_key)
    out = []
    for lam in lams:
        shifted = m - ExactMatrix.identity(m.rows).scale(lam)
        out.append((lam, shifted.kernel_basis()))
    return out


def _orthogonal_diagonalizer(m: ExactMatrix) -> ExactMatrix:
    """Q in SO(N, Q(i)) with Q m Q^{-1} diagonal, for symmetric m."""
    from .gaussian import gauss_sqrt

    n = m.rows
    columns: List[List[GaussRat]] = []
    for lam, vecs in _eigen_data(m):
        ortho: List[List[GaussRat]] = []
        for v in vecs:
            for prev in ortho:
                num = _dot(v, prev)
                den = _dot(prev, prev)
                v = [a - (num / den) * b for a, b in zip(v, prev)]
            norm2 = _dot(v, v)
            if norm2.is_zero():
                # isotropic representative; mix with later vectors
                v = _fix_isotropic(v, vecs, ortho)
                norm2 = _dot(v, v)
            root = gauss_sqrt(norm2)
            if root is None:
                raise ConjugationOutsideField(
                    f"eigenvector normalization needs sqrt({norm2}) outside Q(i)")
            ortho.append([a / root for a in v])
        columns.extend(ortho)
    q = ExactMatrix.from_columns(columns)
    if q.transpose() @ q != ExactMatrix.identity(n):
        raise ConjugationOutsideField("could not orthonormalize the eigenbasis")
    if q.det() != ONE:
        columns[0] = [-a for a in columns[0]]
        q = ExactMatrix.from_columns(columns)
    return q.transpose()  # g = Q^T = Q^{-1}: g m g^{-1} diagonal


def _fix_isotropic(v, vecs, ortho):
    for other in vecs:
        for c in (ONE, GaussRat(0, 1), GaussRat(2), GaussRat(1, 1)):
            cand = [a + c * b for a, b in zip(v, other)]
            for prev in ortho:
                num = _dot(cand, prev)
                den = _dot(prev, prev)
                cand = [x - (num / den) * y for x, y in zip(cand, prev)]
            if not _dot(cand, cand).is_zero():
                return cand
    raise ConjugationOutsideField("isotropic eigenspace over Q(i)")


def _dot(a, b) -> GaussRat:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _glgl_diagonalizer(pair, m: ExactMatrix) -> ExactMatrix:
    from .gaussian import gauss_sqrt

    n = pair.spec.n
    top = ExactMatrix(n, n, [m[i, n + j] for i in range(n) for j in range(n)])
    bot = ExactMatrix(n, n, [m[n + i, j] for i in range(n) for j in range(n)])
    prod = top @ bot  # Y X
    eigen = _eigen_data(prod)
    lam_list = []
    q_cols = []
    for lam, vecs in eigen:
        for v in vecs:
            lam_list.append(lam)
            q_cols.append(v)
    if len(q_cols) != n:
        raise ConjugationOutsideField("block product is not diagonalizable over Q(i)")
    q = ExactMatrix.from_columns(q_cols)
    g1 = q.inverse()  # g1 (YX) g1^{-1} diagonal
    d_vals = []
    for lam in lam_list:
        d = gauss_sqrt(lam)
        if d is None or d.is_zero():
            raise ConjugationOutsideField(
                f"needs a nonzero square root of {lam} in Q(i)")
        d_vals.append(d)
    dmat = ExactMatrix.diagonal(d_vals)
    try:
        g2 = dmat.inverse() @ g1 @ top
        g2_inv = g2.inverse()
    except ZeroDivisionError as exc:
        raise ConjugationOutsideField("degenerate block; no exact conjugator") from exc
    g = ExactMatrix(2 * n, 2 * n, [
        (g1[i, j] if i < n and j < n else
         g2[i - n, j - n] if i >= n and j >= n else ZERO)
        for i in range(2 * n) for j in range(2 * n)
    ])
    return g


def _diag_diagonalizer(pair, m: ExactMatrix) -> ExactMatrix:
    k = m.rows // 2
    block = ExactMatrix(k, k, [m[i, j] for i in range(k) for j in range(k)])
    eigen = _eigen_data(block)
    cols = []
    for _, vecs in eigen:
        cols.extend(vecs)
    if len(cols) != k:
        raise ConjugationOutsideField("g0 component not diagonalizable over Q(i)")
    p_inv = ExactMatrix.from_columns(cols).inverse()
    entries = []
    for i in range(2 * k):
        for j in range(2 * k):
            if i < k and j < k:
                entries.append(p_inv[i, j])
            elif i >= k and j >= k:
                entries.append(p_inv[i - k, j - k])
            else:
                entries.append(ZERO)
    return ExactMatrix(2 * k, 2 * k, entries)
