"""
Diagrams of polynomial spaces
=============================

A filtered diagram in the category of polynomial maps is a formal colimit.
Its tangent is computed levelwise, and it is a differential object exactly
when every transition map is D-linear.
"""

from indtangent import FiniteCategory, IndObject, diff_object_check, ind_apply_functor, ind_apply_nat
from indtangent.cdc import PolyMap
from indtangent.ind import APOLY

walk = FiniteCategory.chain(["0", "1"])


def two_step(*components):
    return IndObject(walk, APOLY, {"0": 2, "1": len(components)},
                     {"0<1": PolyMap.parse(2, list(components))})


shear = two_step("x1 + 2*x2", "x2")
bend = two_step("x1^2", "x2")

for label, X in (("shear", shear), ("bend", bend)):
    TX = ind_apply_functor("T", X)
    print(label, "T levels:", TX.objects, "transition:", TX.arrows["0<1"].format())
    print("   differential object:", diff_object_check(X))

# the projection p^ is a levelwise family, natural in the transitions
p_hat = ind_apply_nat("p", shear)
print("p^ at level 0:", p_hat.family["0"].format())
