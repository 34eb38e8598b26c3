"""The catalog of quasi-split symmetric pairs.

Matrix-level families (all inside gl(N) over Q(i)):

* splitA:n=k   -- (sl(k+1), so(k+1)) with theta(X) = -X^T; k is the rank.
* glgl:n=k    -- (gl(2k), gl(k) x gl(k)) with theta = Ad(diag(I,-I)).
* diag:sl2/3  -- (g0 + g0, diagonal) with theta the factor swap, realized
                 block-diagonally in gl(2k).

Combinatorial-only entries (root data, no matrices):

* g2split     -- the split involution of G2 (inner; compactness table
                 pinned to the four noncompact / two compact positive roots).
* e6qs        -- the split involution of E6 built on the diagram flip.

Construction validates every structural invariant eagerly; a bad catalog
entry must be impossible to consume.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from .gaussian import GaussRat, ONE, ZERO
from .liealg import (
    ConcreteRootData,
    LinearAlgebraFrame,
    Vector,
    build_concrete_root_data,
    gvec,
    vec_is_zero,
)
from .matrix import ExactMatrix, coordinates_in_basis, span_rank
from .rootsystem import RootDatum, build_root_datum, compose, identity_perm


class CatalogError(Exception):
    """A pair spec is invalid or a construction invariant failed."""


@dataclass(frozen=True)
class PairSpec:
    family: str
    n: int = 0
    base: str = ""

    @staticmethod
    def parse(text: str) -> "PairSpec":
        text = text.strip()
        if text == "g2split":
            return PairSpec("g2split")
        if text == "e6qs":
            return PairSpec("e6qs")
        if text.startswith("splitA:n=") or text.startswith("glgl:n="):
            family, _, arg = text.partition(":")
            try:
                n = int(arg.split("=", 1)[1])
            except (IndexError, ValueError) as exc:
                raise CatalogError(f"cannot parse pair spec {text!r}") from exc
            if family == "splitA" and n < 1:
                raise CatalogError("splitA requires n >= 1 (the rank)")
            if family == "glgl" and n < 1:
                raise CatalogError("glgl requires n >= 1")
            return PairSpec(family, n=n)
        if text.startswith("diag:"):
            base = text.split(":", 1)[1]
            if base not in ("sl2", "sl3"):
                raise CatalogError("diag base must be sl2 or sl3")
            return PairSpec("diag", base=base)
        raise CatalogError(f"unknown pair spec {text!r}")

    def render(self) -> str:
        if self.family == "splitA":
            return f"splitA:n={self.n}"
        if self.family == "glgl":
            return f"glgl:n={self.n}"
        if self.family == "diag":
            return f"diag:{self.base}"
        return self.family


@dataclass
class CombinatorialData:
    datum: RootDatum
    theta_perm: bytes
    compactness: Optional[Dict[int, str]]
    w0_input_label: Optional[str] = None
    w0_input_order: Optional[int] = None


@dataclass
class SymmetricPairRealization:
    pair_id: str
    spec: PairSpec
    rank_r1: int
    rank_g: int
    matrix_level: bool
    # matrix-level data
    frame: Optional[LinearAlgebraFrame] = None
    dim_g0: int = 0
    dim_g1: int = 0
    theta_coords: Optional[ExactMatrix] = None
    a_basis: List[Vector] = field(default_factory=list)
    t_split_basis: List[Vector] = field(default_factory=list)
    split_roots: Optional[ConcreteRootData] = None
    fund_roots: Optional[ConcreteRootData] = None
    split_positivity: Optional[Vector] = None  # a-regular element pinning B0
    # combinatorial data
    comb: Optional[CombinatorialData] = None

    # -- element plumbing --------------------------------------------------

    @property
    def dim_g(self) -> int:
        return self.frame.dim if self.frame else 0

    def require_matrix_level(self):
        if not self.matrix_level:
            raise CatalogError(f"{self.pair_id} carries no matrix realization")

    def to_coords(self, m: ExactMatrix) -> Vector:
        self.require_matrix_level()
        return self.frame.to_coords(m)

    def from_coords(self, coords: Sequence) -> ExactMatrix:
        self.require_matrix_level()
        return self.frame.from_coords(coords)

    def theta_apply(self, coords: Sequence) -> Vector:
        return self.theta_coords.apply(gvec(coords))

    def g0_part(self, coords: Sequence) -> Vector:
        coords = gvec(coords)
        half = self.theta_apply(coords)
        return [(a + b) / 2 for a, b in zip(coords, half)]

    def g1_part(self, coords: Sequence) -> Vector:
        coords = gvec(coords)
        half = self.theta_apply(coords)
        return [(a - b) / 2 for a, b in zip(coords, half)]

    def in_g1(self, coords: Sequence) -> bool:
        coords = gvec(coords)
        return self.theta_apply(coords) == [-c for c in coords]

    def in_g0(self, coords: Sequence) -> bool:
        coords = gvec(coords)
        return self.theta_apply(coords) == coords

    def g0_basis_coords(self) -> List[Vector]:
        return [gvec([ONE if i == k else ZERO for i in range(self.dim_g)])
                for k in range(self.dim_g0)]

    def g1_basis_coords(self) -> List[Vector]:
        return [gvec([ONE if i == k else ZERO for i in range(self.dim_g)])
                for k in range(self.dim_g0, self.dim_g)]

    def ad(self, coords: Sequence) -> ExactMatrix:
        return self.frame.ad(coords)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return self.frame.bracket(x, y)

    def centralizer_dim(self, coords: Sequence) -> int:
        return len(self.ad(coords).kernel_basis())

    def sample_a_element(self, rng: random.Random) -> Vector:
        coeffs = [rng.randint(-9, 9) for _ in self.a_basis]
        acc = [ZERO] * self.dim_g
        for c, v in zip(coeffs, self.a_basis):
            acc = [a + GaussRat(c) * x for a, x in zip(acc, v)]
        return acc


# -- basis builders ----------------------------------------------------------


def _unit(n: int, i: int, j: int) -> ExactMatrix:
    return ExactMatrix(n, n, [ONE if (r, c) == (i, j) else ZERO
                              for r in range(n) for c in range(n)])


def _sl_basis(k: int) -> List[ExactMatrix]:
    """Standard sl(k) basis: off-diagonal units then diagonal differences."""
    basis = [_unit(k, i, j) for i in range(k) for j in range(k) if i != j]
    for i in range(k - 1):
        basis.append(_unit(k, i, i) - _unit(k, i + 1, i + 1))
    return basis


def _block_embed(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    k = x.rows
    n = 2 * k
    entries = []
    for i in range(n):
        for j in range(n):
            if i < k and j < k:
                entries.append(x[i, j])
            elif i >= k and j >= k:
                entries.append(y[i - k, j - k])
            else:
                entries.append(ZERO)
    return ExactMatrix(n, n, entries)


# -- family constructions -----------------------------------------------------


def _build_splitA(n: int) -> SymmetricPairRealization:
    N = n + 1
    g0 = [_unit(N, i, j) - _unit(N, j, i) for i in range(N) for j in range(i + 1, N)]
    g1 = [_unit(N, i, j) + _unit(N, j, i) for i in range(N) for j in range(i + 1, N)]
    g1 += [_unit(N, i, i) - _unit(N, i + 1, i + 1) for i in range(N - 1)]
    basis = g0 + g1
    frame = LinearAlgebraFrame(basis)

    def theta(m: ExactMatrix) -> ExactMatrix:
        return -m.transpose()

    theta_coords = _theta_coords_matrix(frame, theta)
    a_basis = [frame.to_coords(_unit(N, i, i) - _unit(N, i + 1, i + 1))
               for i in range(N - 1)]
    mean = Fraction(sum(range(N)), N)
    h_a = frame.to_coords(ExactMatrix.diagonal([Fraction(N - 1 - i) - mean for i in range(N)]))

    # fundamental torus: centralizer of the block-rotation torus of so(N)
    rot = [frame.to_coords(_unit(N, 2 * j, 2 * j + 1) - _unit(N, 2 * j + 1, 2 * j))
           for j in range(N // 2)]
    t_fund = frame.centralizer(rot)
    h_fund = [ZERO] * frame.dim
    for j, r in enumerate(rot):
        h_fund = [a + GaussRat(2 ** j) * x for a, x in zip(h_fund, r)]

    return _assemble_matrix_pair(
        PairSpec("splitA", n=n), frame, len(g0), theta, theta_coords,
        a_basis, h_a, t_fund, h_fund, rank_g=N - 1,
    )


def _build_glgl(n: int) -> SymmetricPairRealization:
    N = 2 * n
    same = [(i, j) for i in range(N) for j in range(N)
            if (i < n) == (j < n)]
    cross = [(i, j) for i in range(N) for j in range(N)
             if (i < n) != (j < n)]
    basis = [_unit(N, i, j) for i, j in same] + [_unit(N, i, j) for i, j in cross]
    frame = LinearAlgebraFrame(basis)
    eps = ExactMatrix.diagonal([1] * n + [-1] * n)

    def theta(m: ExactMatrix) -> ExactMatrix:
        return eps @ m @ eps

    theta_coords = _theta_coords_matrix(frame, theta)
    a_basis = [frame.to_coords(_unit(N, j, n + j) + _unit(N, n + j, j))
               for j in range(n)]
    h_a = [ZERO] * frame.dim
    for j, v in enumerate(a_basis):
        h_a = [a + GaussRat(j + 1) * x for a, x in zip(h_a, v)]

    t_fund = [frame.to_coords(_unit(N, i, i)) for i in range(N)]
    h_fund = [ZERO] * frame.dim
    for i, v in enumerate(t_fund):
        h_fund = [a + GaussRat(2 ** i) * x for a, x in zip(h_fund, v)]

    return _assemble_matrix_pair(
        PairSpec("glgl", n=n), frame, len(same), theta, theta_coords,
        a_basis, h_a, t_fund, h_fund, rank_g=N,
    )


def _build_diag(base: str) -> SymmetricPairRealization:
    k = 2 if base == "sl2" else 3
    sl = _sl_basis(k)
    g0 = [_block_embed(b, b) for b in sl]
    g1 = [_block_embed(b, -b) for b in sl]
    basis = g0 + g1
    frame = LinearAlgebraFrame(basis)
    N = 2 * k
    swap = ExactMatrix(N, N, [ONE if (i + k) % N == j else ZERO
                              for i in range(N) for j in range(N)])

    def theta(m: ExactMatrix) -> ExactMatrix:
        return swap @ m @ swap

    theta_coords = _theta_coords_matrix(frame, theta)
    diag_sl = [_unit(k, i, i) - _unit(k, i + 1, i + 1) for i in range(k - 1)]
    a_basis = [frame.to_coords(_block_embed(h, -h)) for h in diag_sl]
    mean = Fraction(sum(range(k)), k)
    h0 = ExactMatrix.diagonal([Fraction(k - 1 - i) - mean for i in range(k)])
    h_a = frame.to_coords(_block_embed(h0, -h0))

    t_fund = ([frame.to_coords(_block_embed(h, h)) for h in diag_sl]
              + [frame.to_coords(_block_embed(h, -h)) for h in diag_sl])
    h_fund_m = _block_embed(h0, h0.scale(Fraction(1, 2)))
    h_fund = frame.to_coords(h_fund_m)

    return _assemble_matrix_pair(
        PairSpec("diag", base=base), frame, len(g0), theta, theta_coords,
        a_basis, h_a, t_fund, h_fund, rank_g=2 * (k - 1),
    )


def _theta_coords_matrix(frame: LinearAlgebraFrame, theta) -> ExactMatrix:
    cols = [frame.to_coords(theta(b)) for b in frame.basis]
    return ExactMatrix.from_columns(cols)


def _assemble_matrix_pair(spec, frame, dim_g0, theta, theta_coords,
                          a_basis, h_a, t_fund, h_fund, rank_g):
    split_torus = frame.centralizer(a_basis)
    if len(split_torus) != rank_g:
        raise CatalogError(
            f"{spec.render()}: centralizer of a has dimension {len(split_torus)}, "
            f"expected rank {rank_g} (pair not quasi-split as realized)")
    split_roots = build_concrete_root_data(
        frame, split_torus, theta_coords, h_a, compute_compactness=False)
    fund_roots = build_concrete_root_data(
        frame, t_fund, theta_coords, h_fund, compute_compactness=True)
    pair = SymmetricPairRealization(
        pair_id=spec.render(),
        spec=spec,
        rank_r1=len(a_basis),
        rank_g=rank_g,
        matrix_level=True,
        frame=frame,
        dim_g0=dim_g0,
        dim_g1=frame.dim - dim_g0,
        theta_coords=theta_coords,
        a_basis=[gvec(a) for a in a_basis],
        t_split_basis=split_torus,
        split_roots=split_roots,
        fund_roots=fund_roots,
        split_positivity=gvec(h_a),
    )
    _validate_matrix_pair(pair, theta)
    return pair


# -- combinatorial entries ----------------------------------------------------


def _build_g2split() -> SymmetricPairRealization:
    datum = build_root_datum("G2")
    theta_perm = identity_perm(len(datum.all_roots))  # inner involution
    noncompact = {(1, 0), (0, 1), (1, 2), (2, 3)}
    compact = {(1, 1), (1, 3)}
    compactness: Dict[int, str] = {}
    for k, r in enumerate(datum.all_roots):
        key = r if sum(r) > 0 else tuple(-x for x in r)
        if key in compact:
            compactness[k] = "compact"
        elif key in noncompact:
            compactness[k] = "noncompact"
        else:
            raise CatalogError("g2split compactness table does not cover the roots")
    comb = CombinatorialData(datum, theta_perm, compactness,
                             w0_input_label="A1xA1", w0_input_order=4)
    return SymmetricPairRealization(
        pair_id="g2split", spec=PairSpec("g2split"),
        rank_r1=2, rank_g=2, matrix_level=False, comb=comb)


def _build_e6qs() -> SymmetricPairRealization:
    datum = build_root_datum("E6")
    swap = {0: 5, 5: 0, 2: 4, 4: 2, 1: 1, 3: 3}

    def flip(r):
        out = [0] * 6
        for j in range(6):
            out[swap[j]] = r[j]
        return tuple(out)

    theta_perm = bytes(datum.index(flip(r)) for r in datum.all_roots)
    if compose(theta_perm, theta_perm) != identity_perm(72):
        raise CatalogError("e6qs involution is not an involution")
    comb = CombinatorialData(datum, theta_perm, compactness=None,
                             w0_input_label="C4", w0_input_order=384)
    return SymmetricPairRealization(
        pair_id="e6qs", spec=PairSpec("e6qs"),
        rank_r1=6, rank_g=6, matrix_level=False, comb=comb)


# -- validation ----------------------------------------------------------------


def _validate_matrix_pair(pair: SymmetricPairRealization, theta):
    frame = pair.frame
    dim = frame.dim
    theta_c = pair.theta_coords

    if theta_c @ theta_c != ExactMatrix.identity(dim):
        raise CatalogError(f"{pair.pair_id}: theta^2 != id")

    # adapted basis: +1 block then -1 block
    for k in range(dim):
        unit = [ONE if i == k else ZERO for i in range(dim)]
        img = theta_c.apply(unit)
        want = unit if k < pair.dim_g0 else [-u for u in unit]
        if img != want:
            raise CatalogError(f"{pair.pair_id}: basis not adapted to theta at index {k}")

    structure = frame.structure_matrices()
    # antisymmetry of the bracket on basis pairs
    for i in range(dim):
        col_i = structure[i]
        for j in range(i + 1, dim):
            if col_i.column(j) != [-x for x in structure[j].column(i)]:
                raise CatalogError(f"{pair.pair_id}: bracket not antisymmetric")

    # Jacobi, as ad being a Lie homomorphism on basis pairs
    for i in range(dim):
        ad_i = structure[i]
        for j in range(i + 1, dim):
            ad_j = structure[j]
            lhs = frame.ad(structure[i].column(j))
            if lhs != ad_i @ ad_j - ad_j @ ad_i:
                raise CatalogError(f"{pair.pair_id}: Jacobi fails on basis pair ({i},{j})")

    # theta is a Lie algebra automorphism
    for i in range(dim):
        unit = [ONE if t == i else ZERO for t in range(dim)]
        lhs = theta_c @ structure[i] @ theta_c
        rhs = frame.ad(theta_c.apply(unit))
        if lhs != rhs:
            raise CatalogError(f"{pair.pair_id}: theta is not an automorphism")

    # a is abelian, inside g1, of dimension r1
    for x in pair.a_basis:
        if not pair.in_g1(x):
            raise CatalogError(f"{pair.pair_id}: a is not inside g1")
        for y in pair.a_basis:
            if not vec_is_zero(pair.bracket(x, y)):
                raise CatalogError(f"{pair.pair_id}: a is not abelian")
    if span_rank([list(map(lambda g: g, v)) for v in pair.a_basis]) != pair.rank_r1:
        raise CatalogError(f"{pair.pair_id}: a has wrong dimension")

    # quasi-split witness: a generic element of a is regular in g
    rng = random.Random(20240501)
    for attempt in range(8):
        x = pair.sample_a_element(rng)
        if vec_is_zero(x):
            continue
        if pair.centralizer_dim(x) == pair.rank_g:
            break
    else:
        raise CatalogError(f"{pair.pair_id}: no regular element found in a")

    # t_split = t0 + a with t1 = a
    t = pair.t_split_basis
    if span_rank([list(v) for v in t]) != pair.rank_g:
        raise CatalogError(f"{pair.pair_id}: split torus has wrong dimension")
    for x in pair.a_basis:
        if coordinates_in_basis([list(v) for v in t], list(x)) is None:
            raise CatalogError(f"{pair.pair_id}: a not inside its centralizing torus")
    t0_dim = sum(1 for v in t if pair.in_g0(v))
    minus = [pair.g1_part(v) for v in t]
    minus_rank = span_rank([list(v) for v in minus if not vec_is_zero(v)])
    if minus_rank != pair.rank_r1:
        raise CatalogError(f"{pair.pair_id}: t1 part of split torus is not a")

    # pinned positive systems behave under theta
    sr = pair.split_roots
    theta_pos = {sr.theta_perm[k] for k in sr.positive}
    if theta_pos & set(sr.positive):
        raise CatalogError(f"{pair.pair_id}: pinned split Borel is not theta-split")
    fr = pair.fund_roots
    if {fr.theta_perm[k] for k in fr.positive} != set(fr.positive):
        raise CatalogError(f"{pair.pair_id}: pinned fundamental Borel is not theta-stable")
    for k in range(fr.nroots):
        if fr.classify(k) == "real":
            raise CatalogError(f"{pair.pair_id}: fundamental torus sees a real root")


# -- public entry ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _realize_cached(spec: PairSpec) -> SymmetricPairRealization:
    if spec.family == "splitA":
        return _build_splitA(spec.n)
    if spec.family == "glgl":
        return _build_glgl(spec.n)
    if spec.family == "diag":
        return _build_diag(spec.base)
    if spec.family == "g2split":
        return _build_g2split()
    if spec.family == "e6qs":
        return _build_e6qs()
    raise CatalogError(f"unknown family {spec.family}")


def realize(spec) -> SymmetricPairRealization:
    """Build (and fully validate) a catalog pair; accepts a PairSpec or a
    spec string like "splitA:n=2"."""
    if isinstance(spec, str):
        spec = PairSpec.parse(spec)
    return _realize_cached(spec)


def root_decomposition(pair: SymmetricPairRealization) -> ConcreteRootData:
    """Roots of the pinned fundamental theta-stable torus, with the
    involution and compactness tags; matrix-level pairs only."""
    pair.require_matrix_level()
    return pair.fund_roots


def split_root_decomposition(pair: SymmetricPairRealization) -> ConcreteRootData:
    """Roots of the maximally split torus Z(a); matrix-level pairs only."""
    pair.require_matrix_level()
    return pair.split_roots


MATRIX_CATALOG = ("splitA:n=1", "splitA:n=2", "splitA:n=3",
                  "glgl:n=1", "glgl:n=2", "diag:sl2", "diag:sl3")
COMBINATORIAL_CATALOG = ("g2split", "e6qs")
FULL_CATALOG = MATRIX_CATALOG + COMBINATORIAL_CATALOG
