"""Exception hierarchy shared by every tropfiber module."""


class TropFiberError(Exception):
    """Base class for all library errors."""


class ZeroSeriesError(TropFiberError, ZeroDivisionError):
    """Operation needs a series with at least one term."""


class PrecisionError(TropFiberError):
    """A truncated coefficient cannot certify the quantity asked for."""


class ZeroPolyError(TropFiberError):
    """Operation needs a nonzero Laurent polynomial."""


class UnsupportedError(TropFiberError):
    """Input is outside what the operation handles (e.g. wrong number of variables)."""


class ResidueNotInField(TropFiberError):
    """A polynomial over the residue field has no root in that field.

    ``poly`` holds the offending coefficients, lowest degree first.
    """

    def __init__(self, message, poly=None):
        super().__init__(message)
        self.poly = poly


class InvalidResidue(TropFiberError):
    """The prescribed residue is not a root of the relevant initial form."""


class DegenerateSpecialization(TropFiberError):
    """Every perturbed specialization lost the prescribed residue root."""


class InvariantViolation(TropFiberError):
    """An internal invariant failed; this is a bug, never an input problem."""


class ParseError(TropFiberError, ValueError):
    """Syntax or validation error in an expression, with position info."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} (line {line}, column {column})"
        if self.expected:
            detail += "; expected one of: " + ", ".join(self.expected)
        super().__init__(detail)
        self.message = message
