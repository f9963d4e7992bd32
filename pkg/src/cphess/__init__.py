"""Exact verification of contravariant Codazzi structures on flat R^n.

Polynomials are exact over the rationals, so every identity is checked as
a literal zero rather than numerically.
"""

from .algebra import AlgebraSC, Flags, algebra_checks
from .codazzi import (
    DefectTensor,
    GramData,
    algebroid_bracket,
    codazzi_defect,
    connection_D,
    dh,
    is_codazzi,
    leaf_metric,
    modular_field,
    point_algebra,
    volume_identity_defect,
)
from .expr import ParseError, parse_expr
from .finalg import (
    affine_bivector,
    aut_member,
    cocycle_defect,
    cybe_lift_defect,
    dual_poisson_defect,
    phi_double,
    smatrix_defect,
)
from .classify import grid_classify
from .multivector import MultiVector, OneForm, SymBivector, divergence, hess_pairing, schouten_self
from .poly import Context, Poly, normalize
from .tangent import TangentModel, coho_defect, lift_divergence_defect, lift_poisson, poisson_defect, vertical_lift

__version__ = "0.1.0"

__all__ = [
    "AlgebraSC",
    "Context",
    "DefectTensor",
    "Flags",
    "GramData",
    "MultiVector",
    "OneForm",
    "ParseError",
    "Poly",
    "SymBivector",
    "TangentModel",
    "affine_bivector",
    "algebra_checks",
    "algebroid_bracket",
    "aut_member",
    "cocycle_defect",
    "codazzi_defect",
    "coho_defect",
    "connection_D",
    "cybe_lift_defect",
    "dh",
    "divergence",
    "dual_poisson_defect",
    "grid_classify",
    "hess_pairing",
    "is_codazzi",
    "leaf_metric",
    "lift_divergence_defect",
    "lift_poisson",
    "modular_field",
    "normalize",
    "parse_expr",
    "phi_double",
    "point_algebra",
    "poisson_defect",
    "schouten_self",
    "smatrix_defect",
    "vertical_lift",
    "volume_identity_defect",
]
