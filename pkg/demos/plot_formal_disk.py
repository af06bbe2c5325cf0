"""
The formal disk as a diagram of fat points
==========================================

``Q[[t]]`` is approximated by the chain of quotients ``Q[t]/(t^n)``.
Applying the tangent levelwise gives ``t^n`` together with ``n*t^(n-1)*d_t``.
"""

from indtangent import check_ind_tangent_axioms, formal_spf

X, TX = formal_spf(4)
for level in X.index.objects:
    print(f"level {level}:", X.objects[level], "   tangent:", TX.objects[level])

# transition maps are quotients t -> t, and so are their tangents
for name in X.index.arrows:
    print(name, X.base.format_morphism(TX.arrows[name]))

print()
report = check_ind_tangent_axioms(X)
print(f"{sum(r.passed for r in report)} of {len(report.results)} checks pass")
