"""Exception types shared across the package."""


class LiftLabError(Exception):
    """Base class for all errors raised by this package."""


class InvariantViolation(LiftLabError):
    """Input data breaks a structural invariant of a lift or annulus pair."""


class DuplicateX(InvariantViolation):
    """Two samples share the same x coordinate."""


class NonIncreasingY(InvariantViolation):
    """y coordinates are not strictly increasing along increasing x."""


class PeriodViolation(InvariantViolation):
    """y_last >= y_first + 1: the data cannot extend to a homeomorphism lift."""


class XOutOfRange(InvariantViolation):
    """A sample x coordinate lies outside the fundamental domain [0, 1)."""


class ResourceLimit(LiftLabError):
    """A configured guard on breakpoint count or rational size was exceeded."""


class InternalInvariant(LiftLabError):
    """A step of a constructive proof failed an inequality it must satisfy.

    Raised only on implementation bugs; surfaced so tests can detect them.
    """


class IdentityTarget(LiftLabError):
    """The operation is undefined for the identity map."""


class UnsupportedRegularity(LiftLabError):
    """Regularity r = 2 or r = 3, for which no constants are available."""


class TypeMismatch(LiftLabError):
    """Element type does not match the requested quasi-morphism."""


class InfeasibleConfig(LiftLabError):
    """Sampler configuration cannot produce a valid lift."""


class DocumentSyntaxError(LiftLabError):
    """Malformed document text; carries a location hint when available."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(message if not location else f"{message} (at {location})")
        self.location = location


class UnknownCommand(LiftLabError):
    """Command name not recognized by the dispatcher."""
