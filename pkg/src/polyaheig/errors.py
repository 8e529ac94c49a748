"""Exception hierarchy shared by the solver modules."""


class PolyAheigError(Exception):
    """Base class for all solver errors."""


class ZeroRootError(PolyAheigError, ValueError):
    """The polynomial has an exact zero root where none is allowed."""


class NotInterlacingError(PolyAheigError):
    """The interpolating points do not interlace the roots.

    ``index`` is the (0-based, descending order) position of the first
    offending point, or ``None`` when the failure is not tied to one point.
    """

    def __init__(self, message, index=None, point=None):
        super().__init__(message)
        self.index = index
        self.point = point


class RootHitError(PolyAheigError):
    """An interpolating point is numerically a root: u(d_j) is exactly 0."""

    def __init__(self, message, index, point):
        super().__init__(message)
        self.index = index
        self.point = point


class StrategyError(PolyAheigError):
    """A single point-selection strategy failed."""


class AllStrategiesFailed(PolyAheigError):
    """Every point-selection strategy failed; ``attempts`` holds the reasons."""

    def __init__(self, message, attempts):
        super().__init__(message)
        self.attempts = attempts


class BracketError(PolyAheigError):
    """Bisection was started on an interval without a sign change."""


class PoleError(PolyAheigError, ZeroDivisionError):
    """The secular function was evaluated exactly at a pole."""
