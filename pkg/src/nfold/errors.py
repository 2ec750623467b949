"""Exception hierarchy shared across the package."""


class NFoldError(Exception):
    """Base class for every error this package raises deliberately."""


class InstanceError(NFoldError):
    """Malformed input data: bad shapes, unknown relation symbols, bad files."""


class DimensionMismatchError(InstanceError):
    """A vector or matrix does not have the shape the operation requires."""


class UnsupportedRelationError(InstanceError):
    """A constraint relation outside the set the operation supports."""


class UnsupportedCaseError(NFoldError):
    """A parameter regime the implementation deliberately rejects."""


class EmptyScheduleError(NFoldError):
    """A prefix query against a schedule of length zero."""


class ArithmeticOverflowError(NFoldError):
    """A value left the checked signed 64-bit range used for exact arithmetic."""


class SizeLimitError(NFoldError):
    """An exhaustive search or table build would exceed its configured budget."""
