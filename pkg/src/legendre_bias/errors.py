"""Exception hierarchy shared by all modules."""


class LegendreBiasError(Exception):
    """Base class for errors raised by this package."""


class DomainError(LegendreBiasError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OutOfRangeError(LegendreBiasError, ValueError):
    """A query exceeds the range covered by a prime table."""


class ResourceError(LegendreBiasError):
    """A request exceeds a configured resource cap."""


class BracketingError(LegendreBiasError):
    """The average error does not change sign across a bracket."""


class AccuracyError(LegendreBiasError, ArithmeticError):
    """A numerical method failed to reach the requested accuracy.

    ``partial`` carries the last value computed before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CacheError(LegendreBiasError, OSError):
    """A pi-checkpoint cache file is malformed or disagrees with the sieve."""
