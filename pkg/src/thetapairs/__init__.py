"""Exact computations for quasi-split symmetric pairs.

A desk-scale engine: Gaussian-rational linear algebra, Weyl groups with
involutions, a catalog of concrete symmetric pairs, slice and fiber
computations, and stabilizer/lattice models, all exact and deterministic.
"""

from .gaussian import GaussRat, SplittingFieldTooLarge
from .matrix import ExactMatrix
from .lattice import IntLattice, smith_normal_form

__all__ = [
    "GaussRat",
    "SplittingFieldTooLarge",
    "ExactMatrix",
    "IntLattice",
    "smith_normal_form",
]

__version__ = "0.1.0"
