"""Exception hierarchy shared by all wqg modules."""


class WqgError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(WqgError):
    """Operands live over different base fields."""


class InvalidInput(WqgError):
    """A stated precondition of the operation does not hold."""


class AxiomFailure(WqgError):
    """A postcondition that is guaranteed by theory failed numerically.

    Raising this signals corrupted input data rather than a math bug in
    the caller's argument; the failing check report is attached when
    available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotFrobenius(InvalidInput):
    """The given (phi, e) pair fails the dual-basis laws."""


class NonInvertibleT(WqgError):
    """Comparison unit t of two Frobenius systems is not invertible."""


class NotCommutative(InvalidInput):
    """Operation requires a commutative algebra."""


class NotSeparable(WqgError):
    """No separability element exists (the linear system is infeasible)."""


class BadNormalization(InvalidInput):
    """Trace normalization tr(u^-1) = 1 violated."""


class Singular(InvalidInput):
    """A matrix that must be invertible is singular."""


class BadBase(InvalidInput):
    """The base Frobenius system fails verification as an IFS."""


class ProjectorNotIdempotent(WqgError):
    """The separability projector is not idempotent; src/tgt/IFS data inconsistent."""


class NotInvertible(InvalidInput):
    """Element has no inverse in the relevant (sub)algebra."""


class BadTwist(InvalidInput):
    """Twist unit t violates e1 t^-1 e2 = 1."""


class IllDefined(WqgError):
    """A map that must kill the balancing relations has nonzero image on one."""


class NotAHomomorphism(InvalidInput):
    """The given linear map is not a homomorphism of the required kind."""


class InvalidGroupoid(InvalidInput):
    """Groupoid data violates the category or inverse axioms."""


class NotAssociative(InvalidInput):
    """Multiplication table is not associative."""


class ParseError(WqgError):
    """A scalar or file fragment does not parse; carries a location string."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class SchemaError(WqgError):
    """Structurally valid file with out-of-schema content (bad index, missing key)."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
