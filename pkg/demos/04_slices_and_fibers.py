"""Slices and fibers: the quotient map, its section, and the resolution
family over the regular locus.

For sl2/so2 the quotient g1 -> g1//G0 is the map (x, y) -> xy in blow-up
coordinates; the family over the regular locus replaces each point by its
little-Weyl orbit.  The section at 0 is a nonzero regular nilpotent: the
slice does not pass through the cone point.
"""

from thetapairs.fibers import (component_census, fiber_component_dimensions,
                               fiber_over_regular, mixed_degenerate_element,
                               regular_ss_element)
from thetapairs.gaussian import GaussRat, ZERO
from thetapairs.pairs import realize
from thetapairs.slices import (ElementOfG1, build_kw_section, chi1, kw_solve)

p = realize("splitA:n=1")
section = build_kw_section(p)
print("sl2/so2 slice data:")
print("  e =", p.from_coords(section.e))
print("  h =", p.from_coords(section.h))
print("  f =", p.from_coords(section.f))
print("  section at 0 recovers e (a nonzero regular nilpotent):",
      kw_solve(section, [ZERO]) == [ZERO])

x = ElementOfG1.from_matrix(p, p.from_coords(section.slice_point([GaussRat(5)])))
print("  chi1 along the slice at t=5:", chi1(p, x))

# fibers over the regular locus
rss = regular_ss_element(p)
print("\nfiber over a regular semisimple element:",
      fiber_over_regular(p, rss).cardinality, "points (the full little Weyl orbit)")
nil = ElementOfG1.from_coords(p, section.e)
print("fiber over the regular nilpotent:",
      fiber_over_regular(p, nil).cardinality, "point")

# the census of the ambient fiber product: |W| points falling into
# |W / W_a| components of |W_a| points each
for spec in ("glgl:n=2", "diag:sl2"):
    q = realize(spec)
    census = component_census(q, regular_ss_element(q))
    print(f"{spec}: {census.total_points} points in {census.group_count} "
          f"components of {census.wa_order}")

# over the cone point of sl2/so2 the family has two smooth components of
# dimension 1 = dim g1 - r1: the two regular theta-stable Borel classes
audit = fiber_component_dimensions(p, [ZERO] * p.dim_g)
print("\nsl2/so2 family over 0:", audit.component_count, "components,",
      "dimensions", [c.audit_value for c in audit.classes])

# a degenerate base point of glgl:n=2 whose centralizer is a smaller pair
q = realize("glgl:n=2")
deg = mixed_degenerate_element(q)
rep = fiber_over_regular(q, deg)
print("glgl:n=2 over a repeated-coordinate point:",
      rep.cardinality, "=", f"{rep.wa_order}/{rep.stabilizer_order}",
      "fiber points; literal split-characterization flags:",
      [pt.split_characterization for pt in rep.fiber_points])
