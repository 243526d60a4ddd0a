"""Exception types shared across the toolkit."""


class SsekitError(Exception):
    """Base class for every error this package raises deliberately."""


class MatrixFormatError(SsekitError):
    """Input text or JSON could not be parsed into a matrix or chain."""


class DomainError(SsekitError):
    """An operation's preconditions on its inputs do not hold."""


class VerificationError(SsekitError):
    """A claimed certificate or identity failed an exact check."""


class InvariantViolationError(SsekitError):
    """An internal self-check failed.  Reaching this is a bug."""
