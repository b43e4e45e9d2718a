"""Exception hierarchy shared across the package."""


class SupercodimError(Exception):
    """Base class for all package errors."""


class PreconditionError(SupercodimError, ValueError):
    """An argument violates a documented precondition."""


class InvalidMoveError(PreconditionError):
    """A box move would not leave a valid partition."""


class ResourceLimitError(PreconditionError):
    """A computation was refused because its size estimate exceeds the ceiling."""


class AlgebraFormatError(PreconditionError):
    """An algebra description file could not be parsed or completed."""


class IntegrityError(SupercodimError, RuntimeError):
    """An internal consistency check failed.

    Raised when exact data contradicts something that is mathematically
    forced (a non-integral multiplicity, a trace vector outside the row
    space, a modular rank exceeding the exact rank).  Seeing this means
    either the input algebra table is wrong or there is a bug.
    """
