"""Exception hierarchy shared across the package."""


class NilcohError(Exception):
    """Base class for all errors raised by this package."""


class ScalarSyntaxError(NilcohError):
    """A scalar string does not conform to the expression grammar."""


class DimensionMismatch(NilcohError):
    """Operands live in coordinate spaces of different dimensions."""


class NotNilpotentError(NilcohError):
    """An operation that needs a nilpotent algebra got a non-nilpotent one."""


class NotAnIdealError(NilcohError):
    """The given subspace is not an ideal of the ambient algebra."""


class NotASubalgebraError(NilcohError):
    """The given subspace is not closed under the bracket."""


class NonIntegrableError(NilcohError):
    """The almost complex structure fails the integrability condition."""


class FiltrationError(NilcohError):
    """A filtration is malformed (not nested, wrong endpoints, incompatible)."""


class SchemaError(NilcohError):
    """An input file violates the JSON schema."""


class ValidationFailure(NilcohError):
    """Input data is well-formed but mathematically invalid.

    ``kind`` is a short machine-readable tag (e.g. ``"jacobi"``,
    ``"not-nilpotent"``, ``"j-square"``, ``"non-integrable"``).
    """

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


class InternalCheckError(NilcohError):
    """Two independent internal computations of the same quantity disagree.

    This always indicates a bug, never bad input.
    """
