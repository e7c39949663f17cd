"""Exception hierarchy.

Validation problems derive from ``ValueError``; resource-cap problems derive
from :class:`ResourceCapError` so callers (the CLI in particular) can map them
to distinct exit codes.
"""


class GraphExpError(Exception):
    """Base class for all package errors."""


class ValidationError(GraphExpError, ValueError):
    """Input violates a documented precondition."""


class PartsSumMismatch(ValidationError):
    pass


class NotProperSubset(ValidationError):
    pass


class DimensionTooSmall(ValidationError):
    pass


class InvalidStatistic(ValidationError):
    pass


class InfiniteExpectation(ValidationError):
    """The requested target can never be reached (e.g. k > min(m, n))."""


class UnreachableTarget(ValidationError):
    """A nonzero term has a zero rate-sum denominator.

    This happens when zero rates disconnect the process from its target.
    """


class ResourceCapError(GraphExpError):
    pass


class InstanceTooLarge(ResourceCapError):
    pass


class StateSpaceTooLarge(ResourceCapError):
    pass
