from forms.quad_form import Discriminant, GLTransform, QuadForm
from forms.reduction import canonical_form, equivalent, is_reduced, reduce_form, rho

__all__ = [
    "Discriminant",
    "GLTransform",
    "QuadForm",
    "canonical_form",
    "equivalent",
    "is_reduced",
    "reduce_form",
    "rho",
]
