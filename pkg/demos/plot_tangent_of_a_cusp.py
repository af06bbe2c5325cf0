"""
Tangent schemes of singular curves
==================================

The tangent of Spec B is presented by adjoining one jet generator ``d_v``
per variable and the total differential of every relation.
"""

from indtangent import PresentedAlgebra, check_zariski_axioms, structure_maps, tangent_algebra
from indtangent.symcore import Rig

cusp = PresentedAlgebra(Rig.RAT, ("x", "y"), ("y^2 - x^3",))
TB = tangent_algebra(cusp).total
print("B   =", cusp)
print("T B =", TB)

# at the origin every direction is allowed: both partials of y^2 - x^3 vanish
S = structure_maps(cusp)
for name, hom in S.as_dict().items():
    print(f"{name:5} {hom.source} -> {hom.target}")

print()
print(check_zariski_axioms(cusp))

# the same suite with jets truncated to first order
truncated = check_zariski_axioms(cusp, truncate=True)
print()
print(f"truncated jets: {len(truncated.failures())} failures in {len(truncated.results)} checks")
