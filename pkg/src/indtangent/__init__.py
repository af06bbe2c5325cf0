"""Exact, symbolic checks of tangent-category structure.

Submodules: ``symcore`` (polynomials over N, Z, Q), ``ideals`` (membership
and Groebner bases), ``algebra`` (presented algebras and their maps),
``weil`` (Weil algebras), ``cdc`` (the differential combinator on polynomial
maps), ``zariski`` (tangent algebras of presented algebras), ``ind``
(Ind-objects over finite filtered categories) and ``cli``.
"""

from .algebra import AlgebraHom, PresentedAlgebra, hom_compose, hom_equal, make_hom, tensor
from .cdc import PolyMap, cdc_D, check_cd_axioms, check_tangent_axioms, is_dlinear, tangent_T
from .ideals import IdealPresentation, buchberger, ideal_member, normal_form
from .ind import (
    FiniteCategory,
    IndObject,
    check_filtered,
    check_ind_tangent_axioms,
    diff_object_check,
    formal_spf,
    ind_apply_functor,
    ind_apply_nat,
)
from .report import CheckResult, Report
from .symcore import Polynomial, Rig, parse_poly, partial_derivative
from .weil import WeilObject, weil_generate, weil_morphism_check, weil_tensor
from .zariski import check_zariski_axioms, second_tangent_algebra, structure_maps, tangent_algebra

__version__ = "0.1.0"

__all__ = [
    "AlgebraHom", "PresentedAlgebra", "hom_compose", "hom_equal", "make_hom", "tensor",
    "PolyMap", "cdc_D", "check_cd_axioms", "check_tangent_axioms", "is_dlinear", "tangent_T",
    "IdealPresentation", "buchberger", "ideal_member", "normal_form",
    "FiniteCategory", "IndObject", "check_filtered", "check_ind_tangent_axioms",
    "diff_object_check", "formal_spf", "ind_apply_functor", "ind_apply_nat",
    "CheckResult", "Report",
    "Polynomial", "Rig", "parse_poly", "partial_derivative",
    "WeilObject", "weil_generate", "weil_morphism_check", "weil_tensor",
    "check_zariski_axioms", "second_tangent_algebra", "structure_maps", "tangent_algebra",
]
