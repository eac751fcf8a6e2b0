"""Exception hierarchy shared by all modules."""


class SelfAffineError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(SelfAffineError, ValueError):
    """Matrix or vector dimensions are inconsistent."""


class DomainError(SelfAffineError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(SelfAffineError, ValueError):
    """A documented precondition of the operation does not hold."""


class PrecisionError(SelfAffineError, ArithmeticError):
    """Certification failed even at the maximum working precision."""


class InputError(SelfAffineError, ValueError):
    """Malformed user input (file contents, word syntax, ...)."""


class NotStabilizedError(SelfAffineError):
    """The control-point module did not stabilize within the level cap."""

    def __init__(self, message, last_forms=()):
        super().__init__(message)
        self.last_forms = last_forms


class NotInvariantError(SelfAffineError):
    """The expansion maps a generator outside the computed module."""
