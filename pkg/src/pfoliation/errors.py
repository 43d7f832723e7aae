"""Exception hierarchy shared by every module.

``PreconditionError`` covers bad input (wrong field, inhomogeneous form,
violated constraint).  ``InvariantError`` means an internal identity that
must always hold was found broken, i.e. a bug rather than a user error.
"""


class FoliationError(Exception):
    pass


class PreconditionError(FoliationError, ValueError):
    pass


class ParseError(PreconditionError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class InvariantError(FoliationError, RuntimeError):
    pass
