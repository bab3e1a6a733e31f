"""Exception hierarchy shared by all entrotree modules."""


class EntrotreeError(ValueError):
    """Base class for every error raised by the toolkit."""


class DatasetError(EntrotreeError):
    pass


class HierarchyError(EntrotreeError):
    pass


class InductionError(EntrotreeError):
    pass


class RestructureError(EntrotreeError):
    pass


class DmqlError(EntrotreeError):
    """A query error carrying a 1-based source position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class DmqlSyntaxError(DmqlError):
    def __init__(self, message, line=None, column=None, expected=()):
        self.expected = tuple(expected)
        if self.expected:
            message = f"{message} (expected {', '.join(self.expected)})"
        super().__init__(message, line, column)


class DmqlSemanticError(DmqlError):
    pass


class DmqlExecutionError(DmqlError):
    pass
