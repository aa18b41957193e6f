"""Exception types shared across the package."""


class GdofError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(GdofError):
    """An operation was called outside its documented domain.

    Maps to CLI exit code 2.
    """


class CapabilityError(GdofError):
    """A documented size/dimension limit was exceeded.

    Maps to CLI exit code 3.
    """


class InfeasiblePowerError(PreconditionError):
    """Power synthesis was requested for an unachievable rate point.

    Carries the witness circuit (a tuple of vertex names) whose total
    length is negative.
    """

    def __init__(self, message, circuit):
        super().__init__(message)
        self.circuit = circuit
