"""Exception hierarchy.

Input problems derive from ``ValueError``; violated mathematical invariants
derive from ``InvariantViolation`` so callers can tell a bad polygon file
apart from a geometry bug.
"""


class RotakitError(Exception):
    pass


class InputError(RotakitError, ValueError):
    pass


class PolygonFormatError(InputError):
    pass


class DegenerateInput(InputError):
    pass


class NonConvexInput(InputError):
    pass


class NoRotationalSymmetry(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotMultiRotational(InputError):
    pass


class FormulaNotApplicable(InputError):
    pass


class ConvexityUnreachable(InputError):
    pass


class InvariantViolation(RotakitError):
    pass


class NumericalFailure(InvariantViolation):
    pass


class DivisorClosureViolation(InvariantViolation):
    pass


class ToleranceViolation(InvariantViolation):
    pass


class TheoremViolation(InvariantViolation):
    """``check`` names the chain property that failed."""

    def __init__(self, message: str, check: str = "chain_monotone"):
        super().__init__(message)
        self.check = check


class EquivalenceViolation(InvariantViolation):
    pass


class MinimalityViolation(InvariantViolation):
    pass


class SymmetryBroken(InvariantViolation):
    pass
