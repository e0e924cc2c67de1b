"""Exception types raised across the workbench."""


class WorkbenchError(ValueError):
    """Base class for every error raised on bad input."""


class InvalidRingError(WorkbenchError):
    pass


class InvalidModuleError(WorkbenchError):
    pass


class RingMismatchError(WorkbenchError):
    pass


class ImproperInputError(WorkbenchError):
    """An operation defined only for proper ideals/submodules got an improper one."""


class InvalidInputError(WorkbenchError):
    pass


class SizeLimitError(WorkbenchError):
    pass


class RelationViolationError(WorkbenchError):
    """A homomorphism assignment does not respect the relations of the source."""


class InvalidMultiplicativeSetError(WorkbenchError):
    pass


class UnsupportedStructureError(WorkbenchError):
    pass


class PreconditionError(WorkbenchError):
    pass


class SpecParseError(WorkbenchError):
    pass


class UnknownIdentifierError(WorkbenchError):
    """Unknown suite or predicate id."""
