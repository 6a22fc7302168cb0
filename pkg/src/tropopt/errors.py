"""Exception hierarchy for tropopt.

Every error is a :class:`ValueError` so callers that only care about bad input
can keep catching that. Each error carries a ``condition`` naming the violated
condition in plain ASCII, e.g. ``"Tr(B) > 1"``; the CLI reports it verbatim.
"""

from __future__ import annotations


class TropicalError(ValueError):
    """Base class of all tropopt errors."""

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or condition)


# -- algebra -----------------------------------------------------------------


class AlgebraError(TropicalError):
    """Misuse of a matrix/scalar primitive (shapes, zero inverses)."""


class ShapeMismatch(AlgebraError):
    pass


class NotSquare(AlgebraError):
    pass


class AllZeroMatrix(AlgebraError):
    pass


class InverseOfZero(AlgebraError, ZeroDivisionError):
    pass


# -- solver preconditions ----------------------------------------------------


class PreconditionError(TropicalError):
    """A solver or closure precondition does not hold for the given data."""


class Infeasible(PreconditionError):
    pass


class StarDiverges(Infeasible):
    pass


class TraceNotOne(Infeasible):
    pass


class NotRegular(PreconditionError):
    pass


class ZeroSpectralRadius(PreconditionError):
    pass


class BoundsInverted(PreconditionError):
    pass


class DimensionTooLarge(PreconditionError):
    pass


# -- documents and verification ----------------------------------------------


class SchemaError(TropicalError):
    """An instance or report document does not match the expected schema."""


class EmptyFeasibleGrid(TropicalError):
    pass


class VerificationFailure(TropicalError):
    pass
