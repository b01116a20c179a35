"""Exception hierarchy.

Validation errors map to CLI exit code 2, solver errors to exit code 3.
"""


class FuzzyTransportError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FuzzyTransportError, ValueError):
    """Input data does not describe a valid problem."""


class MalformedQuadruple(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NonPositiveSupplyOrDemand(ValidationError):
    pass


class NegativeCost(ValidationError):
    pass


class AlphaOutOfRange(ValidationError):
    pass


class SolverError(FuzzyTransportError):
    """An algorithm could not proceed."""


class NegativeOperand(SolverError):
    pass


class UnbalancedProblem(SolverError):
    pass


class EmptyTableau(SolverError):
    pass


class ExhaustedLine(SolverError):
    pass


class IterationOverflow(SolverError):
    pass


class DegenerateBasis(SolverError):
    pass


class DisconnectedBasis(SolverError):
    pass


class NoLoopFound(SolverError):
    pass


class NoRootInUnitInterval(SolverError):
    pass


class ParseError(ValidationError):
    """The problem document is not well-formed; the message names the field."""
