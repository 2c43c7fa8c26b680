"""Exception hierarchy shared across the package."""


class CompatError(Exception):
    """Base class for every error raised by :mod:`compatorder`."""


class WidthMismatch(CompatError, ValueError):
    """A point set or value vector does not match its ambient space."""


class TopologyError(CompatError, ValueError):
    """An open-set family is not a topology."""


class DiscontinuousError(CompatError, ValueError):
    """A value vector has a fiber that is not open."""

    def __init__(self, message, fiber=None, value=None):
        super().__init__(message)
        self.fiber = fiber
        self.value = value


class SpaceMismatch(CompatError, ValueError):
    """Two functions (or maps) live on different spaces."""


class NotRegularError(CompatError, ValueError):
    """A regular-open/closed operation got an argument that is not regular."""


class NotOrthogonalError(CompatError, ValueError):
    pass


class FamilyOverflowError(CompatError):
    """Enumeration would exceed the configured family cap."""


class GridError(CompatError, ValueError):
    pass


class LatticeError(CompatError, ValueError):
    pass


class MapError(CompatError, ValueError):
    """A family map is malformed or an image leaves its target family."""


class PreconditionError(CompatError, ValueError):
    """A named precondition of a construction failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PipelineError(CompatError):
    """A stage of the reconstruction pipeline failed verification."""

    def __init__(self, stage, message, witness=None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.witness = witness
