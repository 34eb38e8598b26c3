"""Additive Jordan decomposition over Q(i).

The semisimple part is found by Newton iteration on the squarefree part of
the characteristic polynomial, which needs no eigenvalues at all; the
splitting precondition is still enforced so that every decomposition the
package hands out lives in the exactly-representable domain (downstream
fiber computations need the spectrum itself).
"""

from __future__ import annotations

from typing import List, Tuple

from .gaussian import (
    GaussRat,
    gaussian_roots,
    poly_derivative,
    poly_squarefree_part,
)
from .matrix import ExactMatrix


def _poly_of_matrix(coeffs, m: ExactMatrix) -> ExactMatrix:
    n = m.rows
    acc = ExactMatrix.zero(n, n)
    for c in coeffs:
        acc = acc @ m + ExactMatrix.identity(n).scale(c)
    return acc


def eigenvalues(m: ExactMatrix) -> List[GaussRat]:
    """Spectrum with multiplicity; raises SplittingFieldTooLarge if not in Q(i)."""
    return gaussian_roots(m.char_poly())


def jordan_semisimple_part(m: ExactMatrix) -> ExactMatrix:
    """The unique semisimple s with [s, m] = 0 and m - s nilpotent.

    Requires the characteristic polynomial to split over Q(i); otherwise a
    SplittingFieldTooLarge error marks the input as outside the exact domain.
    """
    if m.rows != m.cols:
        raise ValueError("jordan_semisimple_part of non-square matrix")
    chi = m.char_poly()
    # Enforce the exact-domain contract before any work.
    gaussian_roots(poly_squarefree_part(chi))

    p = poly_squarefree_part(chi)
    x = m
    n = m.rows
    # Newton: x <- x - p(x) * p'(x)^{-1}; converges in <= log2(n)+1 steps.
    for _ in range(n.bit_length() + 1):
        px = _poly_of_matrix(p, x)
        if px.is_zero():
            break
        dpx = _poly_of_matrix(poly_derivative(p), x)
        x = x - px @ dpx.inverse()
    else:
        raise AssertionError("Newton iteration failed to terminate")
    assert _poly_of_matrix(p, x).is_zero()
    assert x.commutator(m).is_zero()
    assert (m - x).is_nilpotent()
    return x


def jordan_decomposition(m: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
    """(semisimple, nilpotent) with exact sum and commuting parts."""
    ss = jordan_semisimple_part(m)
    return ss, m - ss


def is_semisimple(m: ExactMatrix) -> bool:
    """True when the minimal polynomial is squarefree (splitting not needed)."""
    chi = m.char_poly()
    p = poly_squarefree_part(chi)
    return _poly_of_matrix(p, m).is_zero()
