"""Exception types shared across the package."""


class TwoDistError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(TwoDistError, ValueError):
    """Malformed textual graph input (graph6 or edge list)."""


class SizeLimitError(TwoDistError, ValueError):
    """Vertex count above the configured maximum."""


class InfeasibleDistanceError(TwoDistError, ValueError):
    """Requested distance ratio lies outside the realizable window."""


class CompleteGraphError(TwoDistError, ValueError):
    """Operation undefined for complete graphs."""


class UndecidableEnclosureError(TwoDistError, RuntimeError):
    """An interval enclosure failed to separate after maximal refinement."""


class GeometricInconsistencyError(TwoDistError, RuntimeError):
    """A point configuration violates the geometric preconditions."""
