"""Exception hierarchy.

Two broad families matter to callers: syntax errors (malformed input
text, CLI exit code 2) and evaluation errors (a well-formed expression
that cannot be instantiated, CLI exit code 3).
"""


class GrossumError(Exception):
    """Base class for every error raised by this package."""


class ExprSyntaxError(GrossumError):
    """Malformed expression text; carries 1-based line and column."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class UnknownFunction(ExprSyntaxError):
    """A call to a function name outside the fixed whitelist."""


class UnboundIndex(ExprSyntaxError):
    """A sum/prod index used inside its own bound expressions."""


class EvaluationError(GrossumError):
    """Instantiation of a well-formed expression failed."""


class UnboundSymbol(EvaluationError):
    """A variable (or the grossone token) had no binding."""


class DivisionByZero(EvaluationError):
    """Division by an instantiated zero; message names the subexpression."""


class ParityViolation(EvaluationError):
    """A concrete grossone value contradicts the declared parity."""


class ZeroInput(EvaluationError):
    """An operation that needs a nonzero argument received zero."""


class UnsupportedExact(EvaluationError):
    """An exact result was requested where only an approximation exists."""


class NotUnitModulus(EvaluationError):
    """Half-angle square root applied off the unit circle."""


class NonInjectiveMap(EvaluationError):
    """A generic-set element map produced a collision or order violation."""


class TooLarge(EvaluationError):
    """An enumeration or exact computation exceeds its documented cap."""


class PoleAtOne(EvaluationError):
    """An Euler-product factor has a vanishing denominator."""
