"""Exception types shared across the package."""


class TsbvpError(Exception):
    """Base class for all package-specific errors."""


class OverlappingSegments(TsbvpError):
    """Two time scale segments intersect on a set of positive measure."""


class EmptyTimeScale(TsbvpError):
    """No segments, or segments that expand to no points at all."""


class PointNotInTimeScale(TsbvpError):
    """A query point does not coincide with any canonical grid point."""


class UndefinedAtBoundary(TsbvpError):
    """Derivative requested at an endpoint where the quotient degenerates."""


class ReversedBounds(TsbvpError):
    """Integral bounds given in decreasing order."""


class InvalidExponent(TsbvpError):
    """p-Laplacian exponent outside (1, inf)."""


class DegenerateDenominator(TsbvpError):
    """A normalizing integral is too close to zero to divide by."""


class DelayOutOfRange(TsbvpError):
    """The deviated argument falls below the start of the history window."""


class EmptyWindow(TsbvpError):
    """No grid points inside the window used by the cone functional."""


class SamplerExhausted(TsbvpError):
    """Rejection sampling hit its attempt cap without producing a member."""


class Y1Empty(TsbvpError):
    """The negative-delay region carries no integral mass."""


class ConfigParseError(TsbvpError):
    """A problem configuration document could not be interpreted."""
