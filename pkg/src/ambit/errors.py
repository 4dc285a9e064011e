"""Exception hierarchy shared across the package.

Two error families matter to callers: ``ValidationError`` means the inputs
themselves are malformed or out of range (CLI exit code 2, HTTP 400), while
``AssumptionError`` means the inputs are fine but the requested assumption
cannot be applied to them (CLI exit code 3, HTTP 422).
"""


class AmbitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AmbitError, ValueError):
    """An input violated a domain invariant (range, shape, or schema)."""


class OutOfRangeError(ValidationError):
    """A value lies outside its admissible range; the message names the bound."""


class AssumptionError(AmbitError):
    """An assumption cannot be applied to the data at hand."""


class InfeasibleAssumptionError(AssumptionError):
    """The assumption contradicts the logical outcome range (empty restriction)."""


class UndefinedMARError(AssumptionError):
    """No respondents exist to anchor a point-identifying assumption."""


class CapExceededError(AmbitError):
    """A request asks for more work than the stateless service will do."""
