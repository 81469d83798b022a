"""Clifford, Grassmann and geometric algebras on set-indexed blades."""

from .blades import F64, RATIONAL, IndexSet, Signature, alpha, beta, sigma, symdiff
from .errors import (
    AlgebraError,
    BasisError,
    MorphismError,
    ScalarKindError,
    SignatureMismatchError,
    UndeclaredIndexError,
)
from .morphisms import (
    GramMatrix,
    MorphismTable,
    apply_morphism,
    change_of_basis_check,
    extend_morphism,
    is_independent,
    orthogonalize,
)
from .multivector import (
    Multivector,
    even_odd_project,
    format_multivector,
    geometric_product,
    grade_involution,
    grade_project,
    left_contraction,
    linear_combine,
    outer_product,
    reversion,
    right_contraction,
    scalar_product,
)

__version__ = "0.1.0"

__all__ = [
    "F64",
    "RATIONAL",
    "IndexSet",
    "Signature",
    "alpha",
    "beta",
    "sigma",
    "symdiff",
    "AlgebraError",
    "BasisError",
    "MorphismError",
    "ScalarKindError",
    "SignatureMismatchError",
    "UndeclaredIndexError",
    "GramMatrix",
    "MorphismTable",
    "apply_morphism",
    "change_of_basis_check",
    "extend_morphism",
    "is_independent",
    "orthogonalize",
    "Multivector",
    "even_odd_project",
    "format_multivector",
    "geometric_product",
    "grade_involution",
    "grade_project",
    "left_contraction",
    "linear_combine",
    "outer_product",
    "reversion",
    "right_contraction",
    "scalar_product",
]
