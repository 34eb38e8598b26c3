"""Regular stabilizers: the tangent solver and the isogeny contrast.

The centralizer map into abelian planes has surjective differential at
regular points: the solution space of the tangent equation has dimension
dim g1 - r1 and the evaluation map is bijective.  The finite fiber of the
stabilizer sheaf depends on the isogeny type: for SL2 it is {+-1} (both
admissible); for PGL2 the fixed torus still has order two, but the root
takes the value -1 on the nontrivial element, which the branching
condition excludes.
"""

from thetapairs.pairs import realize
from thetapairs.slices import build_kw_section
from thetapairs.stabilizers import (admissibility_condition, admissible_elements,
                                    centralizer_plane, character_on_element,
                                    lattice_model, stabilizer_fiber,
                                    tangent_space_solver, torus_fixed_points)

p = realize("splitA:n=1")
section = build_kw_section(p)
plane = centralizer_plane(p, section.e)
print("sl2/so2 nilpotent plane:", [str(p.from_coords(v)) for v in plane.basis])

tangent = tangent_space_solver(p, plane)
print("tangent solution space:", tangent.solution_dimension,
      "= dim g1 - r1 =", tangent.expected_dimension,
      "; evaluation bijective:", tangent.evaluation_bijective)

fiber = stabilizer_fiber(p, plane)
print("\nSL2 stabilizer fiber:", fiber.component_count, "elements;",
      "root values on them:", fiber.character_values)

for name in ("sl2_split", "pgl2_split"):
    model = lattice_model(name)
    report = torus_fixed_points(model)
    _, admissible = admissible_elements(model)
    print(f"\n{name}: fixed torus has {report.component_order} components "
          f"(invariant factors {list(report.torsion)})")
    for el in report.finite_elements():
        verdicts = [admissibility_condition(report, alpha, el)
                    for alpha in model.roots]
        values = [character_on_element(report, alpha, el)
                  for alpha in model.roots]
        print(f"  element {el.residues}: root values {values} -> {verdicts}")
