"""
Differentiating polynomial maps
===============================

Polynomial maps between affine spaces, their derivative ``D`` and the
tangent functor built from it.
"""

from indtangent import PolyMap, cdc_D, check_cd_axioms, is_dlinear, tangent_T
from indtangent.cdc import pm_compose

# a map R^2 -> R^1; components are written in x1, x2, ...
f = PolyMap.parse(2, ["x1*x2 + x1^3"])
print("f            =", f.format())

# D(f) takes a point (x-block) and a direction (y-block)
print("D(f)         =", cdc_D(f).format(d_block=True))

# T(f) keeps the derivative first and the value second
print("T(f)         =", tangent_T(f).format())

# the chain rule, seen through T
g = PolyMap.parse(1, ["x1^2", "x1 - 1"])
assert tangent_T(pm_compose(f, g)) == pm_compose(tangent_T(f), tangent_T(g))
print("T(f o g) = T(f) o T(g): ok")

# D-linear maps are the ones that agree with their own derivative
for m in (PolyMap.parse(2, ["x1 + 2*x2", "x2"]), PolyMap.parse(1, ["x1^2"])):
    print(f"{m.format()!s:28} D-linear: {is_dlinear(m)}")

# the seven axioms on random maps, seeded so reruns agree
print()
print(check_cd_axioms(samples=50, seed=0))
