"""Weyl groups with involutions: the E6 and G2 stories.

The split involution of E6 fixes a subgroup of the Weyl group of order
1152 acting on the fixed lattice as the Weyl group of F4; the fixed-point
subgroup of G0 = Sp(8) contributes the index-3 subgroup of type C4.  For
the split G2 only one of the three classes of theta-stable Borels meets
the regular nilpotent locus: its nilpotent cone is irreducible.
"""

from thetapairs.involutions import compute_subgroups, detect_regular_borels
from thetapairs.pairs import realize
from thetapairs.rootsystem import recognize_type, restricted_reflection_norms

e6 = realize("e6qs")
rep = compute_subgroups(e6)
print("E6:  |W| =", rep.W_order, " |W^theta| =", rep.W_theta_order,
      " |W0| =", rep.W0_order)
print("     [W : W^theta] =", rep.indices[1], "   [W^theta : W0] =", rep.indices[0])

fixed_lattice = [(1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0),
                 (0, 0, 1, 0, 1, 0), (0, 0, 0, 1, 0, 0)]
norms = restricted_reflection_norms(e6.comb.datum, rep.W_theta_perms, fixed_lattice)
print("     W^theta restricted to the fixed lattice has",
      len(norms), "reflections; recognized type:",
      recognize_type(rep.W_theta_order, norms))

g2 = realize("g2split")
rep2 = compute_subgroups(g2)
print("\nG2:  |W| =", rep2.W_order, " |W0| =", rep2.W0_order,
      " [W^theta : W0] =", rep2.indices[0])
classes = detect_regular_borels(g2)
for k, cls in enumerate(classes):
    print(f"     class {k}: size {cls.class_size},",
          "regular" if cls.regular else
          f"not regular (compact simple root #{cls.simple_compact_witness})")
print("     regular classes:", sum(1 for c in classes if c.regular),
      " -> the nilpotent cone of the (-1)-eigenspace is irreducible")
