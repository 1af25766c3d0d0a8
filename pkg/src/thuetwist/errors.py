"""Exception hierarchy shared across the package."""


class ThueTwistError(Exception):
    """Base class for all package errors."""


class NotMonic(ThueTwistError):
    pass


class NotSquarefree(ThueTwistError):
    pass


class IrreducibilityFailed(ThueTwistError):
    pass


class FieldMismatch(ThueTwistError):
    pass


class PrecisionExhausted(ThueTwistError):
    """Numeric certification failed at the working precision; retry with more bits."""


class NotAUnit(ThueTwistError):
    pass


class TorsionUnit(ThueTwistError):
    pass


class AlphaNotPrimitive(ThueTwistError):
    pass


class AlphaZero(ThueTwistError):
    pass


class DegenerateDegree(ThueTwistError):
    """alpha*eps^a generates a proper subfield; carries the actual degree."""

    def __init__(self, a: int, degree: int, expected: int):
        super().__init__(f"a={a}: alpha*eps^a has degree {degree} < {expected}")
        self.a = a
        self.degree = degree
        self.expected = expected


class WindowTooShort(ThueTwistError):
    pass


class NoRecurrenceFound(ThueTwistError):
    pass


class NotIrreducible(ThueTwistError):
    pass


class OddDegreeUnsupported(ThueTwistError):
    pass


class UnsupportedIndex(ThueTwistError):
    pass


class InvalidParameters(ThueTwistError):
    pass
