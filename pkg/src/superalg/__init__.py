"""Exact finite-dimensional superalgebras and their superinvolutions."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, QuadraticField
from .algebra import Element, SuperAlgebra, classify_css
from .constructors import (
    clifford,
    conjugate_superalgebra,
    graded_quaternion,
    graded_tensor,
    matrix_superalgebra,
    quadratic_graded,
    superopposite,
    trivially_graded,
)
from .maps import GradedMap, is_superantiautomorphism, is_superinvolution
from .firstkind import (
    Certificate,
    Verdict,
    clifford_first_kind,
    decide_superantiautomorphism,
    decide_superinvolution_first_kind,
    normalize_to_grading,
)
from .secondkind import (
    QuadExtensionContext,
    build_corestriction,
    decide_superinvolution_second_kind,
)

__all__ = [
    "QQ", "PrimeField", "QuadraticField", "Element", "SuperAlgebra", "classify_css",
    "clifford", "conjugate_superalgebra", "graded_quaternion", "graded_tensor", "matrix_superalgebra",
    "quadratic_graded", "superopposite", "trivially_graded", "GradedMap", "is_superantiautomorphism",
    "is_superinvolution", "Certificate", "Verdict", "clifford_first_kind", "decide_superantiautomorphism",
    "decide_superinvolution_first_kind", "normalize_to_grading", "QuadExtensionContext",
    "build_corestriction", "decide_superinvolution_second_kind",
]
