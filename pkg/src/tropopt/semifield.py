"""Idempotent semifields and their scalars.

A :class:`Semifield` bundles the carrier, the operations ``add`` (idempotent
addition) and ``mul`` (group multiplication on non-zero elements), the zero and
one, the linear order, and rational powers. Every other module takes a
semifield and does all scalar work through it, so the same matrix code runs in
max-plus, min-plus, max-times and min-times.

The zero of every semifield is the distinct :data:`BOTTOM` scalar, never an
encoded infinity. Additive semifields (max-plus, min-plus) compute with
:class:`fractions.Fraction` in exact mode; the multiplicative ones always use
floats compared with a tolerance, since rational roots leave the rationals.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from tropopt.config import DEFAULT_TOLERANCE, Settings
from tropopt.errors import InverseOfZero, SchemaError

Number = Union[Fraction, float]


class SemifieldId(str, Enum):
    """The four standard linearly ordered, radicable idempotent semifields."""

    MAX_PLUS = "max-plus"
    MIN_PLUS = "min-plus"
    MAX_TIMES = "max-times"
    MIN_TIMES = "min-times"

    @property
    def label(self) -> str:
        """Carrier and operations, for messages."""
        return {
            SemifieldId.MAX_PLUS: "(R u {-inf}, max, +)",
            SemifieldId.MIN_PLUS: "(R u {+inf}, min, +)",
            SemifieldId.MAX_TIMES: "(R+ u {0}, max, *)",
            SemifieldId.MIN_TIMES: "(R+ u {+inf}, min, *)",
        }[self]

    @property
    def is_additive(self) -> bool:
        """Whether multiplication is ordinary addition."""
        return self in (SemifieldId.MAX_PLUS, SemifieldId.MIN_PLUS)

    @property
    def is_max(self) -> bool:
        """Whether addition is ``max`` (otherwise ``min``)."""
        return self in (SemifieldId.MAX_PLUS, SemifieldId.MAX_TIMES)

    @property
    def dual(self) -> SemifieldId:
        """The semifield with the opposite addition over the same multiplication."""
        return {
            SemifieldId.MAX_PLUS: SemifieldId.MIN_PLUS,
            SemifieldId.MIN_PLUS: SemifieldId.MAX_PLUS,
            SemifieldId.MAX_TIMES: SemifieldId.MIN_TIMES,
            SemifieldId.MIN_TIMES: SemifieldId.MAX_TIMES,
        }[self]


@dataclass(frozen=True)
class Scalar:
    """An element of a semifield: either the bottom element or a finite value.

    ``value`` is ``None`` for the bottom element. Scalars do not know their
    semifield; arithmetic goes through :class:`Semifield`.
    """

    value: Number | None = None

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    @property
    def tag(self) -> str:
        return "bottom" if self.value is None else "finite"

    def __str__(self) -> str:
        return "bottom" if self.value is None else str(self.value)


BOTTOM = Scalar()


@dataclass(frozen=True)
class Semifield:
    """Arithmetic of one idempotent semifield.

    ``exact`` requests rational arithmetic; it only takes effect for the
    additive semifields (see :attr:`rational`).
    """

    id: SemifieldId = SemifieldId.MAX_PLUS
    exact: bool = True
    tolerance: float = DEFAULT_TOLERANCE

    @classmethod
    def create(cls, id: SemifieldId | str, settings: Settings | None = None) -> Semifield:
        settings = settings or Settings()
        return cls(SemifieldId(id), exact=settings.exact, tolerance=settings.tolerance)

    @property
    def rational(self) -> bool:
        """Whether values are exact :class:`Fraction` objects."""
        return self.exact and self.id.is_additive

    # -- constants and coercion -------------------------------------------

    @property
    def zero(self) -> Scalar:
        return BOTTOM

    @property
    def one(self) -> Scalar:
        return Scalar(self.number(0 if self.id.is_additive else 1))

    def number(self, raw: int | Number | str) -> Number:
        """Convert a raw finite value to the arithmetic type of this semifield."""
        if isinstance(raw, bool):
            raise SchemaError("scalar", f"booleans are not scalars: {raw!r}")
        try:
            exact = raw if isinstance(raw, Fraction) else Fraction(raw)
        except (ValueError, TypeError, OverflowError) as exc:
            raise SchemaError("scalar", f"not a finite number: {raw!r}") from exc
        if not self.id.is_additive and exact <= 0:
            raise SchemaError(
                "scalar", f"{self.id.value} values must be positive, got {raw!r}"
            )
        return exact if self.rational else float(exact)

    def scalar(self, raw: Scalar | int | Number | str | None) -> Scalar:
        """Coerce ``raw`` into a :class:`Scalar`; ``None`` is the bottom element."""
        if isinstance(raw, Scalar):
            return raw if raw.is_bottom else Scalar(self.number(raw.value))
        if raw is None:
            return BOTTOM
        return Scalar(self.number(raw))

    # -- operations -------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        """Idempotent addition; the bottom element is neutral."""
        if a.value is None:
            return b
        if b.value is None:
            return a
        if self.id.is_max:
            return a if a.value >= b.value else b
        return a if a.value <= b.value else b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        """Multiplication; the bottom element is absorbing."""
        if a.value is None or b.value is None:
            return BOTTOM
        if self.id.is_additive:
            return Scalar(a.value + b.value)
        return Scalar(a.value * b.value)

    def leq(self, a: Scalar, b: Scalar) -> bool:
        """The linear order: ``a <= b`` iff ``a + b == b``."""
        if a.value is None:
            return True
        if b.value is None:
            return False
        if self.id.is_max:
            return a.value <= b.value or self._close(a.value, b.value)
        return a.value >= b.value or self._close(a.value, b.value)

    def lt(self, a: Scalar, b: Scalar) -> bool:
        return self.leq(a, b) and not self.eq(a, b)

    def eq(self, a: Scalar, b: Scalar) -> bool:
        """Equality, exact in rational mode and tolerant otherwise."""
        if a.value is None or b.value is None:
            return a.value is None and b.value is None
        return a.value == b.value or self._close(a.value, b.value)

    def inverse(self, a: Scalar) -> Scalar:
        """Multiplicative inverse of a non-zero scalar."""
        if a.value is None:
            raise InverseOfZero("inverse of 0", "the zero element has no inverse")
        if self.id.is_additive:
            return Scalar(-a.value)
        return Scalar(1 / a.value)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        """``a`` times the inverse of ``b``."""
        return self.mul(a, self.inverse(b))

    def power(self, a: Scalar, num: int, den: int = 1) -> Scalar:
        """Rational power ``a^(num/den)`` in the semifield sense."""
        if den < 1:
            raise ValueError("power denominator must be a positive integer")
        if a.value is None:
            if num > 0:
                return BOTTOM
            if num == 0:
                return self.one
            raise InverseOfZero("negative power of 0", "the zero element has no inverse")
        if self.id.is_additive:
            if self.rational:
                return Scalar(a.value * Fraction(num, den))
            return Scalar(a.value * num / den)
        return Scalar(float(a.value) ** (num / den))

    def root(self, a: Scalar, k: int) -> Scalar:
        """The ``k``-th root, i.e. ``a^(1/k)``."""
        return self.power(a, 1, k)

    def sum(self, items: Iterable[Scalar]) -> Scalar:
        """Idempotent sum of ``items``; the empty sum is zero."""
        total = BOTTOM
        for item in items:
            total = self.add(total, item)
        return total

    def prod(self, items: Iterable[Scalar]) -> Scalar:
        """Product of ``items``; the empty product is one."""
        total = self.one
        for item in items:
            total = self.mul(total, item)
        return total

    def scalar_arith(self, a: Scalar, b: Scalar, which: str) -> Scalar | bool:
        """Dispatch ``add``, ``mul`` or ``leq`` by name."""
        if which == "add":
            return self.add(a, b)
        if which == "mul":
            return self.mul(a, b)
        if which == "leq":
            return self.leq(a, b)
        raise ValueError(f"unknown scalar operation: {which!r}")

    def _close(self, x: Number, y: Number) -> bool:
        if self.rational:
            return False
        if self.id.is_additive:
            return abs(x - y) <= self.tolerance * max(1.0, abs(x), abs(y))
        return math.isclose(x, y, rel_tol=self.tolerance)


MAX_PLUS = Semifield(SemifieldId.MAX_PLUS)
MIN_PLUS = Semifield(SemifieldId.MIN_PLUS)
MAX_TIMES = Semifield(SemifieldId.MAX_TIMES)
MIN_TIMES = Semifield(SemifieldId.MIN_TIMES)
