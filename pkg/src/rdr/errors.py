class RdrError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(RdrError, ValueError):
    pass


class DegenerateBody(RdrError):
    """The vertex set does not affinely span the ambient space."""


class NumericalFailure(RdrError):
    pass


class DomainError(RdrError, ValueError):
    """An argument lies outside the closed-form formula's domain."""


class NoContacts(RdrError):
    pass


class NotOptimallyContained(RdrError):
    pass


class UnknownName(RdrError, KeyError):
    """Unknown suite or sampler family name."""
