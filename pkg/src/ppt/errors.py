"""Exception types shared across the package."""

from __future__ import annotations


class PptError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PptError):
    """Syntax error in a `.ppt` source text.

    `line` and `column` are 1-based and point at the first character of
    the offending token.  `expected` lists token descriptions that would
    have been accepted at that position.
    """

    def __init__(self, line: int, column: int, message: str,
                 expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = tuple(expected)
        super().__init__(str(self))

    def __str__(self) -> str:
        text = f"line {self.line}, column {self.column}: {self.message}"
        if self.expected:
            text += " (expected " + " or ".join(self.expected) + ")"
        return text


class RestrictionError(ParseError):
    """Well-formed syntax that violates a rule-form restriction.

    Raised when an initial or final rule body is not a conjunction of
    regular literals, or when a final rule has a nonempty head.
    """


class MixedSection(PptError):
    """A rule set that must come from a single section mixes sections."""


class UnknownAtom(PptError):
    """An atom outside the program alphabet was requested."""


class BudgetExceeded(PptError):
    """The candidate-trace space is larger than the configured budget."""


class SccTooLarge(PptError):
    """A strongly connected component exceeds the loop-enumeration cap."""


class LengthMismatch(PptError):
    """Two traces that must have equal length do not."""
