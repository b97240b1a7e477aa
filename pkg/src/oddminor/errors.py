"""Exception types shared across the package."""


class OddMinorError(Exception):
    """Base class for all errors raised by this package."""


class InstanceTooLarge(OddMinorError):
    """An exhaustive routine was asked to run beyond its configured size limit."""


class PreconditionViolation(OddMinorError, ValueError):
    pass


class UnknownEdge(PreconditionViolation):
    pass


class EmptyCut(PreconditionViolation):
    pass


class Disconnected(PreconditionViolation):
    pass


class StateBudgetExceeded(OddMinorError):
    """A dynamic program created more table entries than allowed.

    This is a resource limit, never a verdict.
    """

    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"state budget of {budget} entries exceeded")


class LiftingFailure(OddMinorError):
    """Lifting a coloring through a reduction step produced an improper coloring."""


class TimeLimitExceeded(OddMinorError):
    """A run went past its configured wall-clock limit (checked between phases)."""
