"""Exact arithmetic layer: Gaussian rationals, matrices, normal forms.

Everything downstream computes over Q(i) = {a + bi : a, b rational} with
no floating point anywhere.  This script walks the primitives.
"""

from fractions import Fraction

from thetapairs.gaussian import GaussRat, I, gauss_sqrt, gaussian_roots
from thetapairs.jordan import jordan_decomposition
from thetapairs.lattice import smith_normal_form
from thetapairs.matrix import ExactMatrix

# Scalars: exact field arithmetic, i^2 = -1
z = GaussRat(Fraction(3, 4), 2)
print("z =", z, "  z * conj(z) =", z * z.conj(), " (the norm, a rational)")
print("i * i =", I * I)

# square roots exist in Q(i) only sometimes; the test is exact
print("sqrt(2i) =", gauss_sqrt(GaussRat(0, 2)), "   sqrt(2) =", gauss_sqrt(GaussRat(2)))

# Matrices: reduced echelon pivoting is deterministic, so kernels are
# byte-stable across runs
m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
print("\nrank:", m.rank())
print("kernel basis:", m.kernel_basis())
print("char poly of diag(2,3):", ExactMatrix.diagonal([2, 3]).char_poly())

# Smith normal form drives every lattice computation later on: here the
# coinvariants of a swap involution on Z^2 (one free rank, no torsion)
d, u, v = smith_normal_form([[1, -1], [-1, 1]])
print("\nSmith form of 1 - swap:", d)

# Jordan decomposition without leaving Q(i): Newton iteration on the
# squarefree part of the characteristic polynomial
block = ExactMatrix.from_rows([[2, 1, 0], [0, 2, 0], [0, 0, 5]])
p = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
x = p @ block @ p.inverse()
ss, nil = jordan_decomposition(x)
print("\nsemisimple part commutes:", ss.commutator(x).is_zero())
print("nilpotent part:", nil.is_nilpotent(), " sum recovers x:", (ss + nil) == x)

# the exact-domain boundary is a typed error, not an approximation
try:
    gaussian_roots([GaussRat(1), GaussRat(0), GaussRat(-2)])  # x^2 - 2
except Exception as exc:
    print("\nx^2 - 2 over Q(i):", type(exc).__name__, "-", exc)
