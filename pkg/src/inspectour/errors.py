"""Exception hierarchy shared across the planning pipeline."""


class PlanningError(Exception):
    """Base class for all errors raised by this package."""


class SceneParseError(PlanningError):
    """Scene file could not be parsed or contains unknown keys."""


class SceneValidationError(PlanningError):
    """Scene violates a structural invariant (names field and rule)."""


class InfeasibleViewpointError(PlanningError):
    """A required viewpoint lies in occupied space or outside the workspace."""


class ResourceLimitError(PlanningError):
    """A configurable resource budget (e.g. voxel count) was exceeded."""


class OccupiedEndpointError(PlanningError):
    """A path query started or ended on an occupied voxel."""


class InvalidTourError(PlanningError):
    """A node sequence is not a valid closed tour over the graph."""
