from __future__ import annotations


class CMError(Exception):
    """Base class for everything the engine raises on purpose."""

    exit_code = 2


class InputError(CMError):
    exit_code = 2


class ConfigError(InputError):
    pass


class CodeSyntaxError(InputError):
    """A line of a diagram code or presentation file could not be parsed."""

    def __init__(self, message: str, *, line: int, column: int, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class ValidationError(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class NotALink(InputError):
    pass


class IllegalMove(InputError):
    pass


class EdgeInTree(InputError):
    pass


class BadWalk(InputError):
    pass


class CapExceeded(InputError):
    pass


class AlgebraError(CMError):
    exit_code = 2


class NotInvertible(AlgebraError):
    pass


class InternalError(CMError):
    exit_code = 3


class NonConvergence(InternalError):
    pass
