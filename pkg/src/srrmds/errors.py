"""Exception types shared across the package."""


class SrrError(Exception):
    """Base class for every error raised by :mod:`srrmds`."""


class InvalidArgument(SrrError, ValueError):
    pass


class UnsupportedError(SrrError):
    pass


class InfeasibleDemand(SrrError):
    """The demand vector lies outside the region a constructive allocator covers."""


class PreconditionFailed(SrrError):
    pass


class DegenerateWitness(SrrError):
    """No separating point exists between two consecutive regions."""
