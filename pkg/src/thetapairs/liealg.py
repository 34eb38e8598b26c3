"""Shared matrix-Lie-algebra machinery for the pair catalog.

Everything here works relative to a realized pair: conversions between
N x N matrices and coordinates in the adapted basis, structure constants,
adjoint matrices, simultaneous eigenspace decompositions under a torus,
and the packaging of a concrete root system (with involution and
compactness tags) into an abstract root datum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .gaussian import GaussRat, ZERO, ONE, gaussian_roots
from .matrix import ExactMatrix, coordinates_in_basis
from .rootsystem import RootDatum

Vector = List[GaussRat]


def gvec(values) -> Vector:
    return [v if isinstance(v, GaussRat) else GaussRat.of(v) for v in values]


def vec_add(a: Vector, b: Vector) -> Vector:
    return [x + y for x, y in zip(a, b)]


def vec_sub(a: Vector, b: Vector) -> Vector:
    return [x - y for x, y in zip(a, b)]


def vec_scale(c, a: Vector) -> Vector:
    c = GaussRat.of(c) if not isinstance(c, GaussRat) else c
    return [c * x for x in a]


def vec_is_zero(a: Vector) -> bool:
    return all(x.is_zero() for x in a)


class LinearAlgebraFrame:
    """Coordinates, brackets and adjoint matrices for a matrix Lie algebra
    given by an explicit basis inside gl(N)."""

    def __init__(self, basis: Sequence[ExactMatrix]):
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.n_def = basis[0].rows
        flat_cols = [list(b.entries) for b in self.basis]
        self._basis_mat = ExactMatrix.from_columns(flat_cols)
        bt = self._basis_mat.transpose()
        gram = bt @ self._basis_mat
        self._solver = gram.inverse() @ bt  # exact pseudo-inverse (full column rank)
        self._structure: Optional[List[ExactMatrix]] = None

    # -- conversions ------------------------------------------------------

    def to_coords(self, m: ExactMatrix) -> Vector:
        flat = list(m.entries)
        coords = self._solver.apply(flat)
        if self._basis_mat.apply(coords) != flat:
            raise ValueError("matrix is not in the algebra's span")
        return coords

    def maybe_coords(self, m: ExactMatrix) -> Optional[Vector]:
        flat = list(m.entries)
        coords = self._solver.apply(flat)
        if self._basis_mat.apply(coords) != flat:
            return None
        return coords

    def from_coords(self, coords: Sequence) -> ExactMatrix:
        coords = gvec(coords)
        acc = ExactMatrix.zero(self.n_def, self.n_def)
        for c, b in zip(coords, self.basis):
            if not c.is_zero():
                acc = acc + b.scale(c)
        return acc

    # -- brackets ----------------------------------------------------------

    def structure_matrices(self) -> List[ExactMatrix]:
        """C_i with bracket(x, y) = (sum_i x_i C_i) @ y in coordinates."""
        if self._structure is None:
            cols_per_i = []
            for bi in self.basis:
                cols = []
                for bj in self.basis:
                    cols.append(self.to_coords(bi.commutator(bj)))
                cols_per_i.append(ExactMatrix.from_columns(cols))
            self._structure = cols_per_i
        return self._structure

    def ad(self, coords: Sequence) -> ExactMatrix:
        coords = gvec(coords)
        structure = self.structure_matrices()
        acc = ExactMatrix.zero(self.dim, self.dim)
        for c, mat in zip(coords, structure):
            if not c.is_zero():
                acc = acc + mat.scale(c)
        return acc

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return self.ad(x).apply(gvec(y))

    def centralizer(self, vectors: Sequence[Vector],
                    ambient: Optional[Sequence[Vector]] = None) -> List[Vector]:
        """Basis of the joint kernel of ad(v) inside a subspace (default g)."""
        if ambient is None:
            space = [gvec([ONE if i == k else ZERO for i in range(self.dim)])
                     for k in range(self.dim)]
        else:
            space = [gvec(v) for v in ambient]
        for v in vectors:
            if not space:
                break
            admat = self.ad(v)
            images = [admat.apply(s) for s in space]
            coeff_mat = ExactMatrix.from_columns(images)
            kern = coeff_mat.kernel_basis()
            space = [_combine(space, c) for c in kern]
        return space


def _combine(vectors: Sequence[Vector], coeffs: Sequence[GaussRat]) -> Vector:
    acc = [ZERO] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if not c.is_zero():
            acc = [a + c * x for a, x in zip(acc, v)]
    return acc


# -- simultaneous eigenspace decomposition ----------------------------------


def weight_decomposition(
    frame: LinearAlgebraFrame,
    torus: Sequence[Vector],
    ambient: Optional[Sequence[Vector]] = None,
) -> List[Tuple[Tuple[GaussRat, ...], List[Vector]]]:
    """Split a subspace into joint ad-eigenspaces of the torus vectors.

    Returns (weight tuple, basis) pairs sorted by weight.  Raises
    SplittingFieldTooLarge if some restriction fails to split over Q(i).
    """
    if ambient is None:
        spaces = [[gvec([ONE if i == k else ZERO for i in range(frame.dim)])
                   for k in range(frame.dim)]]
    else:
        spaces = [[gvec(v) for v in ambient]]
    weights = [tuple()]
    for t in torus:
        admat = frame.ad(t)
        new_spaces: List[List[Vector]] = []
        new_weights = []
        for w, space in zip(weights, spaces):
            basis_mat = ExactMatrix.from_columns(space)
            images = [admat.apply(s) for s in space]
            restriction_cols = []
            for img in images:
                c = basis_mat.solve(img)
                if c is None:
                    raise ValueError("torus does not preserve the subspace")
                restriction_cols.append(c)
            restriction = ExactMatrix.from_columns(restriction_cols)
            for lam in sorted(set(gaussian_roots(restriction.char_poly())),
                              key=GaussRat.sort_key):
                shifted = restriction - ExactMatrix.identity(len(space)).scale(lam)
                kern = shifted.kernel_basis()
                if not kern:
                    continue
                eigen = [_combine(space, c) for c in kern]
                new_spaces.append(eigen)
                new_weights.append(w + (lam,))
        spaces = new_spaces
        weights = new_weights
    pairs = sorted(zip(weights, spaces),
                   key=lambda p: tuple(x.sort_key() for x in p[0]))
    return [(w, s) for w, s in pairs]


# -- concrete root data ------------------------------------------------------


@dataclass
class ConcreteRootData:
    """Roots of a theta-stable torus on g, tied to an abstract datum.

    Index k refers simultaneously to `weights[k]` (the root as a value
    tuple on `torus`), `root_vectors[k]` (a basis vector of the root
    space) and `datum.all_roots[k]` (simple-root coordinates).
    """

    frame: LinearAlgebraFrame
    torus: List[Vector]
    weights: List[Tuple[GaussRat, ...]]
    root_vectors: List[Vector]
    datum: RootDatum
    theta_perm: bytes
    positive: Tuple[int, ...]
    compactness: Optional[Dict[int, str]] = None
    zero_space: List[Vector] = field(default_factory=list)

    @property
    def nroots(self) -> int:
        return len(self.weights)

    def weight_index(self, w: Tuple[GaussRat, ...]) -> int:
        return self.weights.index(w)

    def negation(self) -> bytes:
        neg = []
        for w in self.weights:
            target = tuple(-x for x in w)
            neg.append(self.weight_index(target))
        return bytes(neg)

    def simple_indices_of(self, positive: Sequence[int]) -> List[int]:
        """Indices of the simple roots of a positive system."""
        pos_set = set(positive)
        weight_map = {self.weights[k]: k for k in range(self.nroots)}
        simples = []
        for k in positive:
            is_sum = False
            for a in positive:
                if a == k:
                    continue
                rem = tuple(x - y for x, y in zip(self.weights[k], self.weights[a]))
                other = weight_map.get(rem)
                if other is not None and other in pos_set:
                    is_sum = True
                    break
            if not is_sum:
                simples.append(k)
        return simples

    def classify(self, k: int) -> str:
        """real / imaginary / complex status of root k under theta."""
        img = self.theta_perm[k]
        if img == k:
            return "imaginary"
        if self.weights[img] == tuple(-x for x in self.weights[k]):
            return "real"
        return "complex"


def positivity_key(value: GaussRat):
    return (value.re, value.im)


def is_positive_value(value: GaussRat) -> bool:
    return value.re > 0 or (value.re == 0 and value.im > 0)


def build_concrete_root_data(
    frame: LinearAlgebraFrame,
    torus: Sequence[Vector],
    theta_coords: ExactMatrix,
    regular_element: Vector,
    compute_compactness: bool,
    ambient: Optional[Sequence[Vector]] = None,
) -> ConcreteRootData:
    """Decompose a (sub)algebra under the torus and package the root system.

    `regular_element` (coordinates of a torus element) defines positivity
    through the lexicographic order on Q(i); it must not annihilate any
    root.  Compactness is tagged through the theta eigenvalue on imaginary
    root spaces when requested.
    """
    torus = [gvec(t) for t in torus]
    decomposition = weight_decomposition(frame, torus, ambient=ambient)
    zero_space: List[Vector] = []
    weights: List[Tuple[GaussRat, ...]] = []
    vectors: List[Vector] = []
    for w, space in decomposition:
        if all(x.is_zero() for x in w):
            zero_space.extend(space)
            continue
        if len(space) != 1:
            raise ValueError(
                f"torus is not regular: root space of weight {w} has dimension {len(space)}")
        weights.append(w)
        vectors.append(space[0])
    if len(zero_space) != len(torus):
        raise ValueError("torus is not its own centralizer; not a maximal torus")

    # evaluate roots on the regular element to fix a positive system
    reg_coeffs = coordinates_in_basis([list(t) for t in torus], gvec(regular_element))
    if reg_coeffs is None:
        raise ValueError("regular element must lie in the torus")
    values = []
    for w in weights:
        v = sum((c * x for c, x in zip(reg_coeffs, w)), ZERO)
        if v.is_zero():
            raise ValueError("positivity element is not regular")
        values.append(v)
    positive = tuple(k for k, v in enumerate(values) if is_positive_value(v))

    # theta action on roots
    theta_on_torus = []
    for t in torus:
        img = theta_coords.apply(t)
        c = coordinates_in_basis([list(x) for x in torus], img)
        if c is None:
            raise ValueError("torus is not theta-stable")
        theta_on_torus.append(c)
    perm = []
    weight_map = {w: k for k, w in enumerate(weights)}
    for w in weights:
        img = tuple(
            sum((theta_on_torus[i][j] * w[j] for j in range(len(torus))), ZERO)
            for i in range(len(torus))
        )
        if img not in weight_map:
            raise ValueError("theta does not permute the roots")
        perm.append(weight_map[img])
    perm = bytes(perm)

    datum = _abstract_datum(weights, positive)

    compactness = None
    if compute_compactness:
        compactness = {}
        for k, vec in enumerate(vectors):
            if perm[k] != k:
                continue
            img = theta_coords.apply(vec)
            if img == vec:
                compactness[k] = "compact"
            elif img == [-x for x in vec]:
                compactness[k] = "noncompact"
            else:
                raise ValueError("imaginary root space is not a theta eigenvector")

    return ConcreteRootData(
        frame=frame,
        torus=list(torus),
        weights=weights,
        root_vectors=vectors,
        datum=datum,
        theta_perm=perm,
        positive=positive,
        compactness=compactness,
        zero_space=zero_space,
    )


def _abstract_datum(weights, positive) -> RootDatum:
    """Coordinates of every root in the simple basis, plus the Cartan
    matrix recovered from root strings."""
    weight_map = {w: k for k, w in enumerate(weights)}
    pos_list = list(positive)
    # simple = positive roots that are not sums of two positives
    pos_set = set(pos_list)
    simples = []
    for k in pos_list:
        is_sum = False
        for a in pos_list:
            if a == k:
                continue
            rem = tuple(x - y for x, y in zip(weights[k], weights[a]))
            other = weight_map.get(rem)
            if other is not None and other in pos_set:
                is_sum = True
                break
        if not is_sum:
            simples.append(k)
    rank = len(simples)
    simple_vecs = [weights[s] for s in simples]
    mat = ExactMatrix.from_columns([list(v) for v in simple_vecs])
    coords: List[Tuple[int, ...]] = []
    for w in weights:
        sol = mat.solve(list(w))
        if sol is None:
            raise ValueError("root outside the lattice of simple roots")
        ints = []
        for c in sol:
            if c.im != 0 or c.re.denominator != 1:
                raise ValueError("non-integral simple-root coordinates")
            ints.append(int(c.re))
        coords.append(tuple(ints))
    coord_set = set(coords)

    def string_pairing(j: int, i: int) -> int:
        # <alpha_j, alpha_i coroot> = p - q for the alpha_i string through alpha_j
        if i == j:
            return 2
        cj = coords[j]
        ci = coords[i]
        p = 0
        cur = tuple(a - b for a, b in zip(cj, ci))
        while cur in coord_set:
            p += 1
            cur = tuple(a - b for a, b in zip(cur, ci))
        q = 0
        cur = tuple(a + b for a, b in zip(cj, ci))
        while cur in coord_set:
            q += 1
            cur = tuple(a + b for a, b in zip(cur, ci))
        return p - q

    cartan = [[string_pairing(simples[j], simples[i]) for j in range(rank)]
              for i in range(rank)]
    return RootDatum(rank, cartan, coords)
