"""Exception types shared across the package."""


class CypresError(Exception):
    """Base class for all package errors."""


class InvalidInput(CypresError, ValueError):
    """Arguments violate an operation's preconditions."""


class DegenerateInput(InvalidInput):
    """Parameters describe a degenerate case with no meaningful output (e.g. m = 0)."""


class Unsupported(CypresError):
    """A required hypothesis fails, so the decision procedure declines to answer."""


class InternalError(CypresError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
