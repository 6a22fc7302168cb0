"""Precondition checks shared by the solvers.

A :class:`Checks` object raises the matching :class:`~tropopt.errors.PreconditionError`
when a condition fails and records the condition text when it holds, so the
report can list what was verified.
"""

from __future__ import annotations

import logging

from tropopt.config import MAX_COMPOSITION_DIM
from tropopt.errors import (
    BoundsInverted,
    DimensionTooLarge,
    Infeasible,
    NotRegular,
    ShapeMismatch,
    ZeroSpectralRadius,
)
from tropopt.semifield import Scalar, Semifield
from tropopt.spectral import spectral_radius
from tropopt.tropalg import (
    TropMatrix,
    TropVector,
    classify_regularity,
    is_regular,
    kleene_star,
    require_square,
    tr_poly,
)

logger = logging.getLogger(__name__)


class Checks:
    """Collects the conditions a solver verified, in order."""

    def __init__(self) -> None:
        self.passed: list[str] = []

    def note(self, condition: str) -> None:
        logger.debug("checked %s", condition)
        self.passed.append(condition)

    @property
    def diagnostics(self) -> tuple[str, ...]:
        return tuple(self.passed)

    def vector(self, v: TropVector, name: str, size: int | None = None) -> int:
        if v.cols != 1:
            raise ShapeMismatch("shape", f"{name} must be a column vector, got {v.shape}")
        if size is not None and v.rows != size:
            raise ShapeMismatch("shape", f"{name} has length {v.rows}, expected {size}")
        return v.rows

    def square(self, a: TropMatrix, name: str, size: int | None = None) -> int:
        n = require_square(a, name)
        if size is not None and n != size:
            raise ShapeMismatch("shape", f"{name} is {n}x{n}, expected {size}x{size}")
        return n

    def regular(self, v: TropVector, name: str) -> None:
        if not is_regular(v):
            raise NotRegular(f"{name} not regular", f"{name} has a zero component")
        self.note(f"{name} regular")

    def nonzero(self, v: TropVector, name: str) -> None:
        if v.is_zero:
            raise NotRegular(f"{name} = 0", f"{name} must have a non-zero component")
        self.note(f"{name} != 0")

    def row_regular(self, a: TropMatrix, name: str) -> None:
        if not classify_regularity(a).row_regular:
            raise NotRegular(f"{name} not row-regular", f"{name} has a zero row")
        self.note(f"{name} row-regular")

    def column_regular(self, a: TropMatrix, name: str) -> None:
        if not classify_regularity(a).column_regular:
            raise NotRegular(f"{name} not column-regular", f"{name} has a zero column")
        self.note(f"{name} column-regular")

    def regular_matrix(self, a: TropMatrix, name: str) -> None:
        if not classify_regularity(a).regular:
            raise NotRegular(f"{name} not regular", f"{name} has a zero row or column")
        self.note(f"{name} regular")

    def finite(self, a: TropMatrix, name: str) -> None:
        if not is_regular(a):
            raise NotRegular(f"{name} has a zero entry", f"every entry of {name} must be non-zero")
        self.note(f"{name} has no zero entries")

    def ordered(self, g: TropVector, h: TropVector) -> None:
        if not g.leq(h):
            raise BoundsInverted("not g <= h", "the lower bound g exceeds the upper bound h")
        self.note("g <= h")

    def at_most_one(self, value: Scalar, label: str, sf: Semifield) -> None:
        """``value <= 1``, else ``Infeasible`` naming ``label > 1``."""
        if not sf.leq(value, sf.one):
            raise Infeasible(f"{label} > 1", f"the constraints are infeasible: {label} > 1")
        self.note(f"{label} <= 1")

    def star(self, b: TropMatrix, name: str) -> TropMatrix:
        """``B*`` once ``Tr(B) <= 1`` holds, else ``Infeasible("Tr(B) > 1")``."""
        self.square(b, name)
        self.at_most_one(tr_poly(b), f"Tr({name})", b.sf)
        return kleene_star(b, name)

    def radius(self, a: TropMatrix) -> Scalar:
        """The spectral radius, which must be non-zero."""
        self.square(a, "A")
        radius = spectral_radius(a)
        if radius.is_bottom:
            raise ZeroSpectralRadius("lambda > 0", "the spectral radius of A is zero")
        self.note("lambda > 0")
        return radius

    def dimension(self, n: int, limit: int = MAX_COMPOSITION_DIM) -> None:
        if n > limit:
            raise DimensionTooLarge(
                f"n > {limit}", f"composition sums are limited to n <= {limit}, got {n}"
            )
        self.note(f"n <= {limit}")


def witness_argument(lower: TropVector, upper: TropVector | None = None) -> TropVector:
    """A regular ``u >= lower`` (and ``<= upper`` when given).

    Zero components of ``lower`` are replaced by the matching component of
    ``upper``, or by one for unbounded sets.
    """
    sf = lower.sf
    entries = []
    for i, value in enumerate(lower.entries):
        if value.is_bottom:
            value = upper.at(i) if upper is not None else sf.one
        entries.append(value)
    return TropMatrix(sf, lower.rows, 1, tuple(entries))
