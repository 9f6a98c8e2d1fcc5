"""Exception hierarchy.

Every error raised on purpose by the engine derives from `LcsError`.  The
CLI maps `ValidationError` subclasses to exit status 1, `ParseError` to 2
and `InternalError` (or any other unexpected exception) to 3.
"""


class LcsError(Exception):
    pass


class ValidationError(LcsError):
    """Input data violates a mathematical precondition."""


class ParseError(LcsError):
    """Malformed literal, parameter list or model file."""


class InternalError(LcsError):
    """An identity that must hold by construction failed."""


class DimensionMismatch(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class NotHomogeneous(DegreeMismatch):
    pass


class NotWellDefined(InternalError):
    """An induced map on quotients does not respect the subspaces."""


class JacobiFailure(ValidationError):
    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or "Jacobi identity fails for triple %s" % (self.triple,))


class NotSquareZero(InternalError):
    pass


class ThetaNotClosed(ValidationError):
    pass


class NotLeeCompatible(ValidationError):
    pass


class Degenerate(ValidationError):
    pass


class OddDimension(ValidationError):
    pass


class NotAlmostComplex(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class InapplicablePerturbation(ValidationError):
    pass


class UnknownEntry(ValidationError):
    pass


class BadParams(ValidationError):
    pass
