"""Exception hierarchy shared by all kripkelab modules."""


class KripkeLabError(Exception):
    """Base class for every error raised by this package."""


class ParseError(KripkeLabError):
    """Raised on malformed formula, program or file input."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ArityError(ParseError):
    """A relation symbol is used with inconsistent or unsupported arity."""


class PositivityError(KripkeLabError):
    """The body of an LFP operator uses its set variable negatively."""


class ShapeKindError(KripkeLabError):
    """A recognizer was applied to the wrong class of formula."""


class StructureError(KripkeLabError):
    """Invalid frame, model or structure, or an invalid operation on one."""


class BudgetExceeded(KripkeLabError):
    """A search or enumeration hit its configured resource budget.

    This is an outcome, not a verdict: nothing is known about the query.
    """


class UnassignedVariable(KripkeLabError):
    """A free variable was not given a value during FO evaluation."""
