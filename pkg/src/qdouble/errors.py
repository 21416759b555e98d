"""Exception hierarchy shared by all qdouble modules."""


class QDoubleError(Exception):
    """Base class for all library errors."""


class NotAGroup(QDoubleError):
    """A Cayley table violates a group axiom."""


class DecompositionFailed(QDoubleError):
    """Numerical irrep decomposition did not converge within the retry budget."""


class GroupMismatch(QDoubleError):
    """Operands are defined over different groups."""


class TooSmall(QDoubleError):
    """Requested patch is below the minimal size."""


class EndpointMismatch(QDoubleError):
    """Ribbons cannot be concatenated because their end sites differ."""


class EdgeReuse(QDoubleError):
    """A ribbon would contain two triangles on the same edge."""


class EmptyRibbon(QDoubleError):
    """Operation is undefined for the empty ribbon."""


class BoundaryTouched(QDoubleError):
    """A star or plaquette is not fully contained in the patch."""


class Stuck(QDoubleError):
    """Random ribbon generation found no extension within its retry budget."""


class GeometryInfeasible(QDoubleError):
    """A requested ribbon layout does not fit into the patch."""


class DimensionBudgetExceeded(QDoubleError):
    """An operator or state would exceed the configured dimension budget."""


class InvalidRibbon(QDoubleError):
    """Triangles do not chain into a valid ribbon."""
