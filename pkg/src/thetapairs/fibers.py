"""Fibers of the resolution family and the component bookkeeping.

Point-level fibers over regular elements (parametrized by theta-split
parabolics with the centralizer Levi), the census of components of the
fiber product over a regular semisimple element, the per-component
dimension audit of the restricted family at arbitrary base points (via
Cayley transforms to a fundamental torus of the centralizer), and the
diagonal-pair comparison with the classical simultaneous resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .gaussian import GaussRat, ONE, ZERO, SplittingFieldTooLarge
from .involutions import (
    reflection_lift,
    split_simple_lift,
    theta_fixed_subgroup,
    torus_action_perm,
    weyl_word,
)
from .jordan import is_semisimple
from .liealg import ConcreteRootData, Vector, gvec, vec_is_zero, weight_decomposition
from .matrix import (
    ExactMatrix,
    coordinates_in_basis,
    independent_subset,
    intersect_spans,
    span_rank,
)
from .pairs import CatalogError, SymmetricPairRealization
from .rootsystem import compose, enumerate_weyl, identity_perm
from .slices import (
    ElementOfG1,
    NotRegular,
    conjugate_ss_into_a,
    is_regular,
)


class CentralizerTorusError(Exception):
    """The centralizer of the base point has no fundamental torus over Q(i)."""


# -- exponential lifts of split-side Weyl elements -----------------------------


class SplitWeylLifts:
    """Cached Ad(n_w) matrices for the split-side Weyl group of a pair."""

    def __init__(self, pair: SymmetricPairRealization):
        self.pair = pair
        self.split = pair.split_roots
        self._simple = [split_simple_lift(pair, i)
                        for i in range(self.split.datum.rank)]
        self._cache: Dict[bytes, ExactMatrix] = {
            identity_perm(self.split.nroots): ExactMatrix.identity(pair.dim_g)}
        self._torus_cache: Dict[bytes, ExactMatrix] = {}

    def ad(self, perm: bytes) -> ExactMatrix:
        if perm not in self._cache:
            word = weyl_word(self.split.datum, perm)
            n_ad = ExactMatrix.identity(self.pair.dim_g)
            for i in word:
                n_ad = self._simple[i] @ n_ad
            induced = torus_action_perm(self.pair, self.split, n_ad)
            if induced != perm:
                raise CatalogError("split lift does not realize its Weyl element")
            self._cache[perm] = n_ad
        return self._cache[perm]

    def torus_matrix(self, perm: bytes) -> ExactMatrix:
        if perm not in self._torus_cache:
            torus_cols = [list(t) for t in self.split.torus]
            self._torus_cache[perm] = _restrict(self.ad(perm), torus_cols)
        return self._torus_cache[perm]


def _restrict(action: ExactMatrix, basis_cols: List[List[GaussRat]]) -> ExactMatrix:
    cols = []
    for b in basis_cols:
        img = action.apply(b)
        c = coordinates_in_basis(basis_cols, img)
        if c is None:
            raise CatalogError("action does not preserve the subspace")
        cols.append(c)
    return ExactMatrix.from_columns(cols)


_LIFTS: Dict[str, SplitWeylLifts] = {}


def split_lifts(pair: SymmetricPairRealization) -> SplitWeylLifts:
    if pair.pair_id not in _LIFTS:
        _LIFTS[pair.pair_id] = SplitWeylLifts(pair)
    return _LIFTS[pair.pair_id]


# -- fibers over regular elements ----------------------------------------------


@dataclass
class FiberPoint:
    a_value: Tuple[GaussRat, ...]       # the slice value (a-point) of the point
    witness_borel: List[Vector]         # basis of Lie(B') in ambient coordinates
    split_characterization: bool        # literal B(theta) = Z_B(X_ss) equality


@dataclass
class FiberReport:
    pair_id: str
    base_coords: Vector
    fiber_points: List[FiberPoint]
    wa_order: int
    stabilizer_order: int

    @property
    def orbit_size_formula(self) -> int:
        return self.wa_order // self.stabilizer_order

    @property
    def cardinality(self) -> int:
        return len(self.fiber_points)


def _wa_perms(pair: SymmetricPairRealization) -> List[bytes]:
    split = pair.split_roots
    group = enumerate_weyl(split.datum)
    return theta_fixed_subgroup(group, split.theta_perm)


def fiber_over_regular(pair: SymmetricPairRealization, x: ElementOfG1) -> FiberReport:
    """The fiber of the resolution projection over a regular element.

    The semisimple part is conjugated into the pinned Cartan subspace
    (ConjugationOutsideField if that fails over Q(i)).  Fiber points
    biject with the little-Weyl orbit of the semisimple part: for each
    orbit value the witness Borel interleaves the eigenspace filtrations
    of the nilpotent part according to the value pattern.  Every witness
    is verified exactly (contains the element, its centralizer Borel is a
    regular theta-stable Borel of the Levi); the literal theta-split
    characterization B(theta) = Z_B(X_ss) is recorded per point (it can
    fail on interleaved points over degenerate semisimple parts).
    """
    pair.require_matrix_level()
    if not is_regular(pair, x):
        raise NotRegular("fiber_over_regular needs a regular element")
    ss, nil = x.jordan_parts()
    ad_g = conjugate_ss_into_a(pair, ss)
    ss1 = ad_g.apply(ss)
    nil1 = ad_g.apply(nil)

    split = pair.split_roots
    torus_cols = [list(t) for t in split.torus]
    ss_t = coordinates_in_basis(torus_cols, ss1)
    assert ss_t is not None

    lifts = split_lifts(pair)
    wa = _wa_perms(pair)
    orbit: Dict[Tuple, bytes] = {}
    stab_count = 0
    for w in wa:
        image = lifts.torus_matrix(w).apply(ss_t)
        key = tuple(image)
        if image == ss_t:
            stab_count += 1
        orbit.setdefault(key, w)
    assert len(orbit) == len(wa) // stab_count

    z = pair.frame.centralizer([ss1])
    slots = _defining_slots(pair)
    points = []
    for key in sorted(orbit, key=lambda t: tuple(v.sort_key() for v in t)):
        y_t = list(key)
        witness = _flag_witness(pair, slots, ss1, nil1, ss_t, y_t)
        literal = _verify_fiber_point(pair, z, ss1, nil1, witness)
        points.append(FiberPoint(tuple(y_t), witness, literal))
    return FiberReport(pair.pair_id, list(x.coords), points, len(wa), stab_count)


def _weight_value(weight, torus_coords) -> GaussRat:
    return sum((c * w for c, w in zip(torus_coords, weight)), ZERO)


@dataclass
class DefiningSlot:
    weight: Tuple[GaussRat, ...]   # torus weight on the defining column space
    vector: List[GaussRat]         # eigenvector in Q(i)^N
    block: int                     # factor index (diag pairs split per block)


def _defining_slots(pair) -> List[DefiningSlot]:
    """Simultaneous eigenvectors of the split torus on the defining space,
    ordered by the pinned positivity element (descending values)."""
    n = pair.frame.n_def
    torus_mats = [pair.from_coords(t) for t in pair.t_split_basis]
    spaces = [[gvec([ONE if i == k else ZERO for i in range(n)]) for k in range(n)]]
    weights: List[Tuple[GaussRat, ...]] = [tuple()]
    from .gaussian import gaussian_roots

    for tm in torus_mats:
        new_spaces, new_weights = [], []
        for w, space in zip(weights, spaces):
            basis_mat = ExactMatrix.from_columns(space)
            images = [tm.apply(s) for s in space]
            cols = [basis_mat.solve(img) for img in images]
            restriction = ExactMatrix.from_columns(cols)
            for lam in sorted(set(gaussian_roots(restriction.char_poly())),
                              key=GaussRat.sort_key):
                shifted = restriction - ExactMatrix.identity(len(space)).scale(lam)
                kern = shifted.kernel_basis()
                if not kern:
                    continue
                eigen = []
                for c in kern:
                    acc = [ZERO] * n
                    for coeff, vec in zip(c, space):
                        acc = [a + coeff * b for a, b in zip(acc, vec)]
                    eigen.append(acc)
                new_spaces.append(eigen)
                new_weights.append(w + (lam,))
        spaces, weights = new_spaces, new_weights
    slots = []
    h_t = coordinates_in_basis([list(t) for t in pair.t_split_basis],
                               pair.split_positivity)
    for w, space in zip(weights, spaces):
        for vec in space:
            block = 0
            if pair.spec.family == "diag":
                k = n // 2
                block = 0 if any(not vec[i].is_zero() for i in range(k)) else 1
            slots.append(DefiningSlot(w, vec, block))
    slots.sort(key=lambda s: _weight_value(s.weight, h_t).sort_key(), reverse=True)
    return slots


def _flag_witness(pair, slots: List[DefiningSlot], ss1, nil1, ss_t, y_t) -> List[Vector]:
    """Lie algebra of the Borel whose slice value pattern matches y.

    Slot i of the flag takes the next vector of the kernel filtration of
    the nilpotent part on the eigenspace of the semisimple part whose
    eigenvalue equals the y-value of slot i (blockwise for diagonal pairs).
    """
    n = pair.frame.n_def
    ss_m = pair.from_coords(ss1)
    nil_m = pair.from_coords(nil1)
    blocks = sorted({s.block for s in slots})
    # eigen filtrations per (block, eigenvalue)
    filtrations: Dict[Tuple[int, GaussRat], List[List[GaussRat]]] = {}
    taken: Dict[Tuple[int, GaussRat], int] = {}
    flags: Dict[int, List[List[GaussRat]]] = {b: [] for b in blocks}
    for slot in slots:
        lam = _weight_value(slot.weight, y_t)
        key = (slot.block, lam)
        if key not in filtrations:
            eig = _block_eigenspace(pair, ss_m, lam, slot.block)
            filtrations[key] = _kernel_filtration(nil_m, eig)
            taken[key] = 0
        taken[key] += 1
        filt = filtrations[key]
        if taken[key] > len(filt):
            raise AssertionError("slot pattern exceeds the eigenspace filtration")
        flags[slot.block] = flags[slot.block] + [filt[taken[key] - 1][-1]]
    # stabilizer of the per-block flags inside g
    conditions = []
    for b in blocks:
        chain: List[List[List[GaussRat]]] = []
        acc: List[List[GaussRat]] = []
        for vec in flags[b]:
            acc = acc + [vec]
            chain.append(list(acc))
        conditions.append(chain)
    basis = _flag_stabilizer(pair, conditions)
    return basis


def _block_eigenspace(pair, ss_m, lam, block) -> List[List[GaussRat]]:
    n = ss_m.rows
    shifted = ss_m - ExactMatrix.identity(n).scale(lam)
    kern = shifted.kernel_basis()
    if pair.spec.family == "diag":
        k = n // 2
        rng = range(0, k) if block == 0 else range(k, n)
        kern = [v for v in kern
                if all(v[i].is_zero() for i in range(n) if i not in rng)]
    return kern


def _kernel_filtration(nil_m, eigenspace) -> List[List[List[GaussRat]]]:
    """Increasing chain ker(nil^1) subset ker(nil^2) subset ... on the
    eigenspace; entry k-1 is a basis of ker(nil^k) with the new vector last."""
    if not eigenspace:
        return []
    basis_mat = ExactMatrix.from_columns(eigenspace)
    d = len(eigenspace)
    restriction_cols = []
    for v in eigenspace:
        img = nil_m.apply(v)
        c = basis_mat.solve(img)
        if c is None:
            raise AssertionError("nilpotent part does not preserve the eigenspace")
        restriction_cols.append(c)
    restr = ExactMatrix.from_columns(restriction_cols)
    chain = []
    power = ExactMatrix.identity(d)
    prev: List[List[GaussRat]] = []
    for k in range(1, d + 1):
        power = power @ restr
        kern = power.kernel_basis()
        if len(kern) != k:
            raise AssertionError("nilpotent part is not regular on the eigenspace")
        stage = list(prev)
        for c in kern:
            vec = [ZERO] * len(eigenspace[0])
            for coeff, base in zip(c, eigenspace):
                vec = [a + coeff * b for a, b in zip(vec, base)]
            if span_rank([list(v) for v in stage + [vec]]) > len(stage):
                stage = stage + [vec]
        assert len(stage) == k
        chain.append(stage)
        prev = stage
    return chain


def _flag_stabilizer(pair, block_chains) -> List[Vector]:
    """Basis of {M in g : M F_j subset F_j for every flag step}."""
    n = pair.frame.n_def
    rows = []
    for chain in block_chains:
        for step in chain:
            comp = _complement_functionals(step, n)
            for v in step:
                for phi in comp:
                    # condition: phi(M v) = 0; unknowns M in g-coordinates
                    row = []
                    for b in pair.frame.basis:
                        mv = b.apply(v)
                        row.append(sum((p * q for p, q in zip(phi, mv)), ZERO))
                    rows.append(row)
    if not rows:
        return [gvec([ONE if i == k else ZERO for i in range(pair.dim_g)])
                for k in range(pair.dim_g)]
    mat = ExactMatrix.from_rows(rows)
    return mat.kernel_basis()


def _complement_functionals(step, n) -> List[List[GaussRat]]:
    """Functionals vanishing exactly on span(step)."""
    mat = ExactMatrix.from_rows([list(v) for v in step])
    return mat.kernel_basis()


def _span_eq(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra = span_rank([list(v) for v in a])
    rb = span_rank([list(v) for v in b])
    if ra != rb:
        return False
    return span_rank([list(v) for v in list(a) + list(b)]) == ra


def _verify_fiber_point(pair, z, ss1, nil1, witness) -> bool:
    """Exact checks; returns whether the literal characterization
    B(theta) = Z_B(X_ss) holds at this point."""
    expected_dim = (pair.dim_g + pair.rank_g) // 2
    if span_rank([list(v) for v in witness]) != expected_dim:
        raise AssertionError("witness is not a Borel subalgebra (wrong dimension)")
    x1 = [a + b for a, b in zip(ss1, nil1)]
    if coordinates_in_basis([list(v) for v in witness], x1) is None:
        raise AssertionError("element does not lie in its fiber Borel")
    theta_w = [pair.theta_apply(v) for v in witness]
    b_theta = intersect_spans([list(v) for v in witness], [list(v) for v in theta_w])
    z_b = intersect_spans([list(v) for v in witness], [list(v) for v in z])
    # Z_B(X_ss) must be a regular theta-stable Borel subalgebra of the Levi
    theta_zb = [pair.theta_apply(v) for v in z_b]
    if not _span_eq(z_b, theta_zb):
        raise AssertionError("Z_B(X_ss) is not theta-stable")
    if span_rank([list(v) for v in z_b]) != (len(z) + pair.rank_g) // 2:
        raise AssertionError("Z_B(X_ss) is not a Borel subalgebra of the Levi")
    if not vec_is_zero(nil1):
        if coordinates_in_basis([list(v) for v in z_b], list(nil1)) is None:
            raise AssertionError("nilpotent part escapes Z_B(X_ss)")
        if len(_ad_restricted(pair, z, nil1).kernel_basis()) != pair.rank_g:
            raise AssertionError("nilpotent part is not regular in the centralizer")
    return _span_eq(b_theta, z_b)


def _ad_restricted(pair, subspace: Sequence[Vector], y: Vector) -> ExactMatrix:
    ad_y = pair.ad(y)
    cols = []
    basis_cols = [list(v) for v in subspace]
    for v in basis_cols:
        img = ad_y.apply(v)
        c = coordinates_in_basis(basis_cols, img)
        if c is None:
            raise AssertionError("subspace is not ad-stable")
        cols.append(c)
    return ExactMatrix.from_columns(cols)


# -- G0 lifts of the little Weyl group and fiber conjugators --------------------


def _exp_braid(pair, e: Vector, f: Vector) -> ExactMatrix:
    ad = pair.ad
    return (ad(e).exp_nilpotent() @ ad([-c for c in f]).exp_nilpotent()
            @ ad(e).exp_nilpotent())


@dataclass
class G0WeylLift:
    perm: bytes           # the W_a element (split-side root permutation)
    ad_matrix: ExactMatrix


def g0_weyl_lifts(pair: SymmetricPairRealization) -> Dict[bytes, ExactMatrix]:
    """Ad matrices of G0 representatives for every little-Weyl element.

    Generators come from theta-adapted sl2 triples: for a real split root,
    n = exp(e) exp(theta e) exp(e) with f = -theta(e) (fixed by theta via
    the braid identity); for a complex pair, the product of the root braid
    with its theta image.  Returns {} entries only for elements reached by
    the generated group; the catalog pairs are fully covered.
    """
    split = pair.split_roots
    theta_c = pair.theta_coords
    neg = split.negation()
    gens: List[Tuple[bytes, ExactMatrix]] = []
    seen_orbits = set()
    for k in split.positive:
        if k in seen_orbits:
            continue
        img = split.theta_perm[k]
        e = split.root_vectors[k]
        if img == neg[k]:
            # real root: f = -theta(e); the triple normalization needs
            # alpha(-[e, theta e]) = 2, reachable by scaling e when 2/s is
            # a Gaussian square
            seen_orbits.update({k, neg[k]})
            scaled = _scale_real_root_vector(pair, split, k)
            if scaled is None:
                continue
            e, f = scaled
            m = _exp_braid(pair, e, f)
        elif img != k:
            # complex pair: the braid commutes with its theta image exactly
            # when the two sl2's are orthogonal; then the product is fixed
            seen_orbits.update({k, neg[k], img, neg[img]})
            m1 = _root_braid(pair, split, k)
            if m1 is None:
                continue
            m_theta = theta_c @ m1 @ theta_c
            if m1 @ m_theta != m_theta @ m1:
                continue
            m = m1 @ m_theta
        else:
            continue
        if theta_c @ m @ theta_c != m:
            continue
        try:
            perm = torus_action_perm(pair, split, m)
        except CatalogError:
            continue
        gens.append((perm, m))

    lifts: Dict[bytes, ExactMatrix] = {
        identity_perm(split.nroots): ExactMatrix.identity(pair.dim_g)}
    frontier = list(lifts)
    while frontier:
        nxt = []
        for p in frontier:
            for gp, gm in gens:
                q = compose(gp, p)
                if q not in lifts:
                    lifts[q] = gm @ lifts[p]
                    nxt.append(q)
        frontier = nxt
    return lifts


def _scale_real_root_vector(pair, split, k: int):
    from .gaussian import gauss_sqrt

    e = split.root_vectors[k]
    theta_e = pair.theta_apply(e)
    h = pair.bracket(e, [-c for c in theta_e])
    val = _root_value_at(split, k, h)
    if val.is_zero():
        return None
    for cand in (GaussRat(2) / val, GaussRat(-2) / val):
        c = gauss_sqrt(cand)
        if c is not None:
            e2 = [c * x for x in e]
            f2 = [-x for x in pair.theta_apply(e2)]
            h2 = pair.bracket(e2, f2)
            if _root_value_at(split, k, h2) == GaussRat(2):
                return e2, f2
    return None


def _root_value_at(split, k: int, h: Vector) -> GaussRat:
    coeffs = coordinates_in_basis([list(t) for t in split.torus], h)
    if coeffs is None:
        raise CatalogError("h is not in the split torus")
    return _weight_value(split.weights[k], coeffs)


def _root_braid(pair, split, k: int) -> Optional[ExactMatrix]:
    neg = split.negation()
    e = split.root_vectors[k]
    f_raw = split.root_vectors[neg[k]]
    h = pair.bracket(e, f_raw)
    val = _root_value_at(split, k, h)
    if val.is_zero():
        return None
    f = [(GaussRat(2) / val) * c for c in f_raw]
    return _exp_braid(pair, e, f)


def exhibit_fiber_conjugators(pair: SymmetricPairRealization,
                              report: FiberReport) -> Optional[List[ExactMatrix]]:
    """Explicit G0 conjugators moving the first fiber Borel onto each of
    the others, when the G0 Weyl lifts suffice (always, for the regular
    semisimple and nilpotent witnesses of the catalog pairs).  Returns None
    when some point is not reached."""
    if len(report.fiber_points) <= 1:
        return []
    lifts = g0_weyl_lifts(pair)
    base = report.fiber_points[0].witness_borel
    out = []
    for point in report.fiber_points[1:]:
        found = None
        for m in lifts.values():
            image = [m.apply(v) for v in base]
            if _span_eq(image, point.witness_borel):
                found = m
                break
        if found is None:
            return None
        out.append(found)
    return out


# -- catalog sample elements -------------------------------------------------------


def regular_ss_element(pair: SymmetricPairRealization) -> ElementOfG1:
    """A regular semisimple element of a with trivial little-Weyl stabilizer."""
    from .gaussian import GaussRat

    coeffs = [GaussRat(3 ** j) for j in range(pair.rank_r1)]
    acc = [ZERO] * pair.dim_g
    for c, v in zip(coeffs, pair.a_basis):
        acc = [a + c * b for a, b in zip(acc, v)]
    x = ElementOfG1.from_coords(pair, acc)
    if not is_regular(pair, x):
        raise CatalogError(f"{pair.pair_id}: canonical sample is not regular")
    return x


def mixed_degenerate_element(pair: SymmetricPairRealization) -> ElementOfG1:
    """A regular element whose semisimple part has a nontrivial little-Weyl
    stabilizer (for rank one, the regular nilpotent: the stabilizer of 0 is
    everything)."""
    from .slices import build_kw_section

    n_def = pair.frame.n_def
    fam = pair.spec.family
    if pair.rank_r1 == 1:
        section = build_kw_section(pair)
        return ElementOfG1.from_coords(pair, section.e)
    if fam == "splitA":
        # eigenvalues (1, 1, 2, 3, ...) balanced to trace zero
        vals = [1, 1] + list(range(2, n_def - 1))
        vals.append(-sum(vals))
        ss_m = ExactMatrix.diagonal(vals)
        nil_m = ExactMatrix.zero(n_def, n_def)
        sym = {(0, 0): GaussRat(1), (0, 1): GaussRat(0, 1),
               (1, 0): GaussRat(0, 1), (1, 1): GaussRat(-1)}
        nil_m = ExactMatrix(n_def, n_def,
                            [sym.get((i, j), ZERO) for i in range(n_def)
                             for j in range(n_def)])
        x_m = ss_m + nil_m
    elif fam == "glgl":
        n = pair.spec.n
        d_vals = [1, 1] + list(range(2, n))
        entries = {}
        for j, d in enumerate(d_vals):
            entries[(j, n + j)] = GaussRat(d)
            entries[(n + j, j)] = GaussRat(d)
        entries[(0, n + 1)] = GaussRat(1)
        entries[(n + 0, 1)] = GaussRat(1)
        x_m = ExactMatrix(n_def, n_def,
                          [entries.get((i, j), ZERO) for i in range(n_def)
                           for j in range(n_def)])
    elif fam == "diag":
        k = n_def // 2
        vals = [1, 1] + list(range(2, k - 1))
        vals.append(-sum(vals))
        block = ExactMatrix.diagonal(vals)
        nil = ExactMatrix(k, k, [GaussRat(1) if (i, j) == (0, 1) else ZERO
                                 for i in range(k) for j in range(k)])
        s = block + nil
        x_m = ExactMatrix(n_def, n_def, [
            (s[i, j] if i < k and j < k else
             -s[i - k, j - k] if i >= k and j >= k else ZERO)
            for i in range(n_def) for j in range(n_def)])
    else:
        raise CatalogError(f"{pair.pair_id}: no degenerate sample recipe")
    x = ElementOfG1.from_matrix(pair, x_m)
    if not is_regular(pair, x):
        raise CatalogError(f"{pair.pair_id}: degenerate sample is not regular")
    return x


# -- component census ------------------------------------------------------------


@dataclass
class ComponentCensus:
    pair_id: str
    total_points: int
    groups: List[List[int]]   # indices of W elements, grouped by component
    wa_order: int

    @property
    def group_count(self) -> int:
        return len(self.groups)


def component_census(pair: SymmetricPairRealization, x: ElementOfG1) -> ComponentCensus:
    """Partition the |W|-point fiber of the ambient fiber product over a
    regular semisimple element by the component containing each point."""
    pair.require_matrix_level()
    if not is_regular(pair, x):
        raise NotRegular("census needs a regular semisimple element")
    ss, nil = x.jordan_parts()
    if not vec_is_zero(nil):
        raise NotRegular("census needs a semisimple element")
    ad_g = conjugate_ss_into_a(pair, ss)
    x1 = ad_g.apply(gvec(x.coords))

    split = pair.split_roots
    torus_cols = [list(t) for t in split.torus]
    x_t = coordinates_in_basis(torus_cols, x1)
    lifts = split_lifts(pair)
    group = enumerate_weyl(split.datum)
    a_cols = [coordinates_in_basis(torus_cols, list(a)) for a in pair.a_basis]

    mats = [lifts.torus_matrix(p) for p in group.elements]
    inv_mats = [m.inverse() for m in mats]
    points = [m.apply(x_t) for m in mats]
    if len({tuple(pt) for pt in points}) != group.order:
        raise NotRegular("Weyl orbit is not free; element is not regular enough")

    labels: Dict[frozenset, List[int]] = {}
    for idx, pt in enumerate(points):
        label = frozenset(
            v for v in range(group.order)
            if coordinates_in_basis(a_cols, inv_mats[v].apply(pt)) is not None)
        labels.setdefault(label, []).append(idx)
    groups = sorted(labels.values(), key=lambda g: g[0])
    wa = _wa_perms(pair)
    for g in groups:
        if len(g) != len(wa):
            raise AssertionError("component group of unexpected size")
    if len(groups) != group.order // len(wa):
        raise AssertionError("unexpected number of components")
    return ComponentCensus(pair.pair_id, group.order, groups, len(wa))


# -- centralizer pairs and the dimension audit -------------------------------------


@dataclass
class CentralizerClassAudit:
    regular: bool
    class_size: int
    dim_b_theta_g0: int
    dim_n_theta_g1: int
    audit_value: int          # dim g0 - dim(b(theta) cap g0) + dim(n(theta) cap g1)
    expected: int             # dim g1 - r1


@dataclass
class DimensionAudit:
    pair_id: str
    a_point: Vector
    component_count: int
    classes: List[CentralizerClassAudit]

    def passes(self) -> bool:
        return all(c.audit_value == c.expected for c in self.classes if c.regular)


def _cayley_to_fundamental(pair, z_basis: List[Vector], torus: List[Vector]):
    """Iterated Cayley transforms: replace real-root directions by compact
    ones until the torus of the centralizer subalgebra has no real roots."""
    frame = pair.frame
    torus = [gvec(t) for t in torus]
    for _ in range(64):
        try:
            decomposition = weight_decomposition(frame, torus, ambient=z_basis)
        except SplittingFieldTooLarge as exc:
            raise CentralizerTorusError(str(exc)) from exc
        torus_cols = [list(t) for t in torus]
        real_root = None
        for wt, space in decomposition:
            if all(x.is_zero() for x in wt):
                continue
            theta_wt = _theta_weight(pair, torus, wt)
            if theta_wt == tuple(-x for x in wt):
                real_root = (wt, space[0])
                break
        if real_root is None:
            return torus
        wt, vec = real_root
        theta_vec = pair.theta_apply(vec)
        new_dir = [a + b for a, b in zip(vec, theta_vec)]
        if vec_is_zero(new_dir) or not is_semisimple(pair.from_coords(new_dir)):
            raise CentralizerTorusError("Cayley direction is not semisimple")
        kernel = _alpha_kernel(torus, wt)
        torus = independent_subset([list(v) for v in kernel + [new_dir]])
        if len(torus) != len(torus_cols):
            raise CentralizerTorusError("Cayley transform changed the torus rank")
    raise CentralizerTorusError("Cayley iteration did not terminate")


def _alpha_kernel(torus, wt) -> List[Vector]:
    """Basis of ker(alpha) inside the torus span."""
    r = len(torus)
    rows = [[wt[i] for i in range(r)]]
    kern = ExactMatrix.from_rows(rows).kernel_basis()
    out = []
    for coeffs in kern:
        acc = [ZERO] * len(torus[0])
        for c, t in zip(coeffs, torus):
            acc = [a + c * b for a, b in zip(acc, t)]
        out.append(acc)
    return out


def _theta_weight(pair, torus, wt):
    torus_cols = [list(t) for t in torus]
    imgs = [coordinates_in_basis(torus_cols, pair.theta_apply(t)) for t in torus]
    return tuple(
        sum((imgs[i][j] * wt[j] for j in range(len(torus))), ZERO)
        for i in range(len(torus))
    )


def fiber_component_dimensions(pair: SymmetricPairRealization,
                               a_point: Vector) -> DimensionAudit:
    """Per-component dimension audit of the restricted family over a point
    of the Cartan subspace.

    For each regular theta-stable Borel class of the centralizer pair,
    checks dim g0 - dim(b(theta) cap g0) + dim(n(theta) cap g1)
    = dim g1 - r1; the component count is the number of regular classes.
    """
    pair.require_matrix_level()
    a_point = gvec(a_point)
    if coordinates_in_basis([list(v) for v in pair.a_basis], a_point) is None:
        raise CatalogError("base point must lie in the Cartan subspace")
    frame = pair.frame
    if vec_is_zero(a_point):
        z_basis = [gvec([ONE if i == k else ZERO for i in range(pair.dim_g)])
                   for k in range(pair.dim_g)]
    else:
        z_basis = frame.centralizer([a_point])
    t_fund = _cayley_to_fundamental(pair, z_basis, pair.t_split_basis)
    rdata = _fundamental_root_data(pair, z_basis, t_fund)
    classes = _regular_classes_of_view(pair, z_basis, rdata)

    dim_g0 = pair.dim_g0
    dim_g1 = pair.dim_g1
    expected = dim_g1 - pair.rank_r1
    audits = []
    for cls in classes:
        positive = [cls["perm"][k] for k in rdata.positive]
        t_vectors = [list(t) for t in rdata.torus]
        pos_vectors = [rdata.root_vectors[k] for k in positive]
        b_theta = t_vectors + [list(v) for v in pos_vectors]
        b_g0 = span_rank([list(pair.g0_part(v)) for v in b_theta
                          if not vec_is_zero(pair.g0_part(v))] or [[ZERO]])
        n_g1 = span_rank([list(pair.g1_part(v)) for v in pos_vectors
                          if not vec_is_zero(pair.g1_part(v))] or [[ZERO]])
        audits.append(CentralizerClassAudit(
            regular=cls["regular"],
            class_size=cls["size"],
            dim_b_theta_g0=b_g0,
            dim_n_theta_g1=n_g1,
            audit_value=dim_g0 - b_g0 + n_g1,
            expected=expected,
        ))
    count = sum(1 for c in audits if c.regular)
    return DimensionAudit(pair.pair_id, a_point, count, audits)


def _fundamental_root_data(pair, z_basis, t_fund) -> ConcreteRootData:
    from .liealg import build_concrete_root_data

    frame = pair.frame
    # positivity element: a theta-fixed torus element missing every root
    t0 = independent_subset(
        [list(pair.g0_part(t)) for t in t_fund if not vec_is_zero(pair.g0_part(t))])
    primes = [2, 3, 5, 7, 11, 13]
    last_error = None
    for scale in range(1, 6):
        h0 = [ZERO] * pair.dim_g
        for j, t in enumerate(t0):
            h0 = [a + GaussRat(primes[j % len(primes)] ** scale) * b
                  for a, b in zip(h0, t)]
        try:
            return build_concrete_root_data(
                frame, t_fund, pair.theta_coords, h0,
                compute_compactness=True, ambient=z_basis)
        except ValueError as exc:
            last_error = exc
    raise CentralizerTorusError(f"no regular positivity element found: {last_error}")


def _regular_classes_of_view(pair, z_basis, rdata: ConcreteRootData):
    """W0\\W^theta classes with regularity marks for a centralizer pair."""
    group = enumerate_weyl(rdata.datum)
    wtheta = theta_fixed_subgroup(group, rdata.theta_perm)
    w0 = _w0_of_view(pair, z_basis, rdata)
    cosets: Dict[bytes, List[bytes]] = {}
    for w in wtheta:
        key = min(compose(u, w) for u in w0)
        cosets.setdefault(key, []).append(w)
    simple_base = rdata.simple_indices_of(list(rdata.positive))
    comp = rdata.compactness or {}
    out = []
    for key in sorted(cosets):
        simples = [key[s] for s in simple_base]
        shortcut = all(comp.get(s) != "compact" for s in simples)
        regular = shortcut
        if rdata.nroots:
            witness = [ZERO] * pair.dim_g
            seen = set()
            for s in simples:
                if s in seen:
                    continue
                seen.add(s)
                seen.add(rdata.theta_perm[s])
                part = pair.g1_part(rdata.root_vectors[s])
                witness = [a + b for a, b in zip(witness, part)]
            semantic = (not vec_is_zero(witness)) and (
                len(_ad_restricted(pair, z_basis, witness).kernel_basis())
                == pair.rank_g)
            if semantic != shortcut:
                raise CatalogError(
                    "centralizer regularity: shortcut and semantic tests disagree")
            regular = semantic
        else:
            regular = True  # torus centralizer: the zero nilpotent is regular
        out.append({"perm": key, "size": len(cosets[key]), "regular": regular})
    return out


def _w0_of_view(pair, z_basis, rdata: ConcreteRootData) -> List[bytes]:
    t0 = independent_subset(
        [list(pair.g0_part(t)) for t in rdata.torus
         if not vec_is_zero(pair.g0_part(t))])
    z_g0 = independent_subset(
        [list(pair.g0_part(v)) for v in z_basis
         if not vec_is_zero(pair.g0_part(v))])
    decomposition = weight_decomposition(pair.frame, t0, ambient=z_g0)
    gens = []
    weight_map = {}
    roots = []
    for w, space in decomposition:
        if all(x.is_zero() for x in w):
            continue
        if len(space) != 1:
            raise CatalogError("centralizer g0 root space not one-dimensional")
        weight_map[w] = len(roots)
        roots.append((w, space[0]))
    seen = set()
    for w, vec in roots:
        negw = tuple(-x for x in w)
        if (negw, w) in seen:
            continue
        seen.add((w, negw))
        f_raw = roots[weight_map[negw]][1]

        def value_of_h(h, w=w, t0=t0):
            coeffs = coordinates_in_basis([list(t) for t in t0], h)
            return sum((c * x for c, x in zip(coeffs, w)), ZERO)

        lift = reflection_lift(pair, vec, f_raw, value_of_h)
        gens.append(torus_action_perm(pair, rdata, lift))
    ident = identity_perm(rdata.nroots)
    lifts = {ident}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in lifts:
                    lifts.add(q)
                    out.append(q)
                    nxt.append(q)
        frontier = nxt
    return out
