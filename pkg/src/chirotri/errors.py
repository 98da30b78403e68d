"""Exception types shared across the package."""


class ChirotriError(Exception):
    """Base class for all domain errors raised by this package."""


class GeneralPositionViolation(ChirotriError):
    """Three points were collinear where general position is required."""


class TooSmall(ChirotriError):
    """An operand has fewer elements than the operation supports."""


class TooLarge(ChirotriError):
    """A result would exceed the materialization/oracle size cap."""


class InvalidTriple(ChirotriError):
    """A sign query used repeated or out-of-range labels."""


class NotARootedChirotope(ChirotriError):
    """The distinguished element is not extreme, or hull neighbors are corrupt."""


class SharedEndpoint(ChirotriError):
    """A crossing query was made on segments sharing an endpoint."""


class OutOfRange(ChirotriError):
    """A numeric argument is outside the documented domain."""


class OracleTooLarge(ChirotriError):
    """Brute-force enumeration was requested beyond the size cap."""


class InternalInvariantViolation(ChirotriError):
    """A checked internal identity failed; indicates a malformed operand or a bug."""


class EmptyInput(ChirotriError):
    """An operation received an empty polynomial or sequence."""


class MalformedFile(ChirotriError):
    """A file does not conform to its documented format."""


class ConstructionFailed(ChirotriError):
    """A geometric construction could not be validated at any tolerance."""


class NumericalInstability(ChirotriError):
    """A numeric evaluation hit a denominator below tolerance."""


class ExprSyntaxError(ChirotriError):
    """Expression parse error, carrying a 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
