"""Exception hierarchy shared by every module."""


class SuperalgError(Exception):
    """Base class; ``tag`` is a short machine-readable name."""

    tag = "error"


class DivisionByZero(SuperalgError, ZeroDivisionError):
    tag = "DivisionByZero"


class FieldMismatch(SuperalgError):
    tag = "FieldMismatch"


class ZeroInput(SuperalgError):
    tag = "ZeroInput"


class NotAQuadraticExtension(SuperalgError):
    tag = "NotAQuadraticExtension"


class FactorizationTooHard(SuperalgError):
    tag = "FactorizationTooHard"


class InvalidField(SuperalgError):
    tag = "InvalidField"


class InvalidAlgebra(SuperalgError):
    tag = "InvalidAlgebra"


class ParentMismatch(SuperalgError):
    tag = "ParentMismatch"


class NotHomogeneous(SuperalgError):
    tag = "NotHomogeneous"


class NotInvertible(SuperalgError):
    tag = "NotInvertible"


class UnsupportedCenterFactorization(SuperalgError):
    tag = "UnsupportedCenterFactorization"


class UnsupportedDimension(SuperalgError):
    tag = "UnsupportedDimension"


class NotMinimal(SuperalgError):
    tag = "NotMinimal"


class NotCSS(SuperalgError):
    tag = "NotCSS"


class NotOddType(SuperalgError):
    tag = "NotOddType"


class NotSplitEven(SuperalgError):
    tag = "NotSplitEven"


class ZeroParameter(SuperalgError):
    tag = "ZeroParameter"


class EmptyShape(SuperalgError):
    tag = "EmptyShape"


class ZeroCoefficient(SuperalgError):
    tag = "ZeroCoefficient"


class TooLarge(SuperalgError):
    tag = "TooLarge"


class NotBijective(SuperalgError):
    tag = "NotBijective"


class NotInner(SuperalgError):
    tag = "NotInner"


class Degenerate(SuperalgError):
    tag = "Degenerate"


class DimMismatch(SuperalgError):
    tag = "DimMismatch"


class NotEvenCSS(SuperalgError):
    tag = "NotEvenCSS"


class NotAntiautomorphism(SuperalgError):
    tag = "NotAntiautomorphism"


class NoSuperantiautomorphism(SuperalgError):
    tag = "NoSuperantiautomorphism"


class NonSquareInvariant(SuperalgError):
    tag = "NonSquareInvariant"


class UnsupportedField(SuperalgError):
    tag = "UnsupportedField"


class NotOverQuadraticExtension(SuperalgError):
    tag = "NotOverQuadraticExtension"


class NotSemilinearAntiauto(SuperalgError):
    tag = "NotSemilinearAntiauto"


class UnsupportedA0(SuperalgError):
    tag = "UnsupportedA0"


class UnsupportedShape(SuperalgError):
    tag = "UnsupportedShape"
