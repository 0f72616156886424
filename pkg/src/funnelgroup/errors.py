"""Exception types raised across the library."""


class FunnelGroupError(Exception):
    """Base class for all library errors."""


class NotHyperbolicError(FunnelGroupError):
    """An axis was requested for a map that is not hyperbolic."""


class InfiniteFixedPointError(FunnelGroupError):
    """A fixed point lies at the point at infinity, which is excluded."""


class PoleHitError(FunnelGroupError):
    """A boundary point was mapped onto (or too close to) the pole."""


class PoleInsideIntervalError(FunnelGroupError):
    """The pole of a map lies inside an interval it was asked to transport."""


class InvalidConfigError(FunnelGroupError):
    """A semicircle configuration violates ordering or disjointness."""


class UseBaseBuilderError(FunnelGroupError):
    """Extended builder called with no orientation-reversing flags set."""


class DepthOverflowError(FunnelGroupError):
    """A word enumeration would exceed the configured word cap."""


class NestingViolationError(FunnelGroupError):
    """A refinement cell escaped its parent; the configuration is unsound."""


class DegenerateRankOneError(FunnelGroupError):
    """Rank-1 groups have a two-point limit set and no interval complement.

    Carries the endpoints of the single axis so callers can still report it.
    """

    def __init__(self, axis_endpoints):
        self.axis_endpoints = axis_endpoints
        super().__init__(
            f"rank-1 group: limit set is the two points {axis_endpoints}"
        )


class NoBracketError(FunnelGroupError):
    """The dimension bisection found no sign change on the search domain."""


class RankTooSmallError(FunnelGroupError):
    """The requested construction needs a larger rank."""


class NonpositiveLengthError(FunnelGroupError):
    """A geodesic length must be strictly positive."""


class SchemaError(FunnelGroupError):
    """An input file does not match the published schema."""
