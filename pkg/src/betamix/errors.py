"""Exception hierarchy shared by the library and the command-line tool."""


class BetaMixError(ValueError):
    """Base class for all errors raised by :mod:`betamix`."""


class DomainError(BetaMixError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(BetaMixError):
    """Incompatible parameters, e.g. histograms built on different grids."""


class InsufficientDataError(BetaMixError):
    """The series is too short for the requested dimension and lag."""

    def __init__(self, n, minimum, what="series"):
        self.n = n
        self.minimum = minimum
        super().__init__(f"{what} has length {n}; at least {minimum} observations are required")


class NonErgodicError(BetaMixError):
    """The transition matrix has no unique stationary distribution."""


class CapacityError(BetaMixError):
    """Brute-force enumeration would exceed the configured size guard."""


class HypothesisError(BetaMixError):
    """A bound was requested outside the regime where it holds."""


class PartitionError(BetaMixError):
    """The sample cannot be split into equal alternating blocks."""
