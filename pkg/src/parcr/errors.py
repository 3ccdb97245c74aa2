"""Exception types shared across the package."""

from __future__ import annotations


class ParcrError(Exception):
    """Base class for every error raised by parcr."""


class InvalidRank(ParcrError):
    pass


class NotRegular(ParcrError):
    pass


class NotABasis(ParcrError):
    pass


class NotARoot(ParcrError):
    pass


class NotInvolutive(ParcrError):
    pass


class NotIsometric(ParcrError):
    pass


class NotRootPreserving(ParcrError):
    pass


class NotParabolic(ParcrError):
    pass


class NotAdmissible(ParcrError):
    pass


class NotInScope(ParcrError):
    pass


class BudgetExceeded(ParcrError):
    """A bounded enumeration hit its budget before finishing."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class SpecSyntaxError(ParcrError):
    """Malformed diagram spec; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class ValidationError(ParcrError):
    """Well-formed diagram spec that does not describe a valid pair.

    ``invariant`` names the violated condition (paint, arrows, involution, ...).
    """

    def __init__(self, message: str, line: int | None = None, invariant: str | None = None):
        prefix = f"line {line}: " if line is not None else ""
        tag = f"[{invariant}] " if invariant else ""
        super().__init__(prefix + tag + message)
        self.line = line
        self.invariant = invariant
        self.reason = message
