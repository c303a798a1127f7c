"""Exception types shared across the package."""


class FluxLabError(Exception):
    """Base class for all package-specific errors."""


class SingularPoint(FluxLabError):
    """A point or path entered the exclusion disk around a flux line."""


class StepTooCoarse(FluxLabError):
    """Quadrature cross-check of a line integral exceeded its tolerance."""


class PointOnPath(FluxLabError):
    """Winding number requested for a point lying on the path."""


class SegmentThroughFlux(FluxLabError):
    """A translation segment passes through a flux exclusion disk."""


class NotGridMultiple(FluxLabError):
    """Translation displacement is not an integer multiple of the grid spacing."""


class ProbeStraddlesAxis(FluxLabError):
    """Commutator probe support is not confined to one quadrant cell."""


class OnAxis(FluxLabError):
    """Sign-function argument of the commutator phase formula is zero."""


class PacketTooNarrow(FluxLabError):
    """Gaussian width below the resolvability floor of the grid."""


class PacketOffGrid(FluxLabError):
    """Gaussian packet mass is not contained in the grid."""


class FluxOnLink(FluxLabError):
    """A flux center lies on (or too close to) a grid link."""


class SolverDiverged(FluxLabError):
    """Iterative linear solve did not reach the requested residual."""


class GeometryOverlap(FluxLabError):
    """Scenario geometry elements overlap where they must not."""


class FluxOutsideChamber(FluxLabError):
    """A chamber's flux line is not inside the chamber polygon."""


class GridTouchesAxis(FluxLabError):
    """Grid contains samples on the excluded coordinate axis."""


class NotAField(FluxLabError):
    """Operation requires a field with nonzero norm."""


class SchemaError(FluxLabError):
    """Configuration text does not match the documented schema."""


class RangeError(FluxLabError):
    """Configuration value violates a documented invariant."""
