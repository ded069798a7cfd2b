"""Exception hierarchy shared by all subpackages."""


class EquiresError(Exception):
    """Base class for every error raised by the package."""


class UnsupportedGroupError(EquiresError):
    pass


class GroupMismatchError(EquiresError):
    pass


class InvalidGroupError(EquiresError):
    """A group or character table failed verification."""


class DecompositionError(EquiresError):
    """A character did not decompose integrally into irreducibles."""


class InconsistentActionError(EquiresError):
    pass


class WindowError(EquiresError):
    """A map moved a label outside the requested weight window."""


class FlatnessError(EquiresError):
    def __init__(self, message, cells=()):
        super().__init__(message)
        self.cells = tuple(cells)


class ChainMapError(EquiresError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class ComplexError(EquiresError):
    pass


class NotUpwardClosedError(EquiresError):
    pass


class NotExactError(EquiresError):
    """Input to the long exact sequence check is not a short exact sequence."""


class InvalidSpaceError(EquiresError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class OutOfScopeError(EquiresError):
    pass


class NotCocycleError(EquiresError):
    pass


class LocalizationObstruction(EquiresError):
    pass


class SchemaError(EquiresError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
