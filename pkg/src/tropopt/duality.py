"""Isomorphisms between the standard semifields.

Two maps cover all four semifields:

- ``negate`` takes max-plus to min-plus (``v -> -v``) and max-times to
  min-times (``v -> 1/v``); it is its own inverse.
- ``log2`` takes max-times to max-plus and min-times to min-plus
  (``v -> log2 v``); its inverse is ``exp2``.

Both preserve addition, multiplication and the semifield order, so solving a
mapped instance and mapping the report back gives the original report. The
oracle uses ``log2`` to grid-search multiplicative instances in max-plus or
min-plus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from tropopt.model import (
    GeneratedCone,
    GeneratedInterval,
    Interval,
    OptimumReport,
    PinnedScaledBox,
    ProblemInstance,
    SolutionSet,
    Substituted,
)
from tropopt.semifield import Number, Scalar, Semifield, SemifieldId
from tropopt.tropalg import TropMatrix

_INVERSE = {"negate": "negate", "log2": "exp2", "exp2": "log2"}


@dataclass(frozen=True)
class SemifieldMap:
    """An isomorphism ``source -> target`` acting on scalars, matrices, instances and reports."""

    source: Semifield
    target: Semifield
    kind: str

    def value(self, v: Number) -> Number:
        """Image of a finite value."""
        if self.kind == "negate":
            raw = -v if self.source.id.is_additive else 1 / v
        elif self.kind == "log2":
            raw = math.log2(v)
        elif self.kind == "exp2":
            raw = 2.0 ** float(v)
        else:
            raise ValueError(f"unknown semifield map {self.kind!r}")
        return self.target.number(raw)

    def scalar(self, s: Scalar) -> Scalar:
        return s if s.is_bottom else Scalar(self.value(s.value))

    def matrix(self, m: TropMatrix) -> TropMatrix:
        self._check_source(m)
        return TropMatrix(self.target, m.rows, m.cols, tuple(self.scalar(e) for e in m.entries))

    def instance(self, inst: ProblemInstance) -> ProblemInstance:
        data = {
            name: self.matrix(value) if isinstance(value, TropMatrix) else self.scalar(value)
            for name, value in inst.data.items()
        }
        return ProblemInstance(self.target, inst.form, data)

    def solution_set(self, s: SolutionSet) -> SolutionSet:
        if isinstance(s, Interval):
            return Interval(self.matrix(s.lower), self.matrix(s.upper))
        if isinstance(s, GeneratedInterval):
            return GeneratedInterval(
                self.matrix(s.generator), self.matrix(s.u_lower), self.matrix(s.u_upper)
            )
        if isinstance(s, GeneratedCone):
            return GeneratedCone(self.matrix(s.generator), self.matrix(s.u_lower))
        if isinstance(s, PinnedScaledBox):
            return PinnedScaledBox(k=s.k, s=s.s, pin=self.scalar(s.pin), caps=self.matrix(s.caps))
        if isinstance(s, Substituted):
            return Substituted(self.matrix(s.outer), self.solution_set(s.inner))
        raise TypeError(f"unknown solution set {type(s).__name__}")

    def report(self, r: OptimumReport) -> OptimumReport:
        return OptimumReport(
            value=self.scalar(r.value),
            solution_set=self.solution_set(r.solution_set),
            witness=self.matrix(r.witness),
            sense=r.sense,
            complete=r.complete,
            diagnostics=r.diagnostics,
        )

    def inverse(self) -> SemifieldMap:
        return SemifieldMap(self.target, self.source, _INVERSE[self.kind])

    def _check_source(self, m: TropMatrix) -> None:
        if m.sf.id is not self.source.id:
            raise ValueError(f"expected a {self.source.id.value} matrix, got {m.sf.id.value}")


def negation(sf: Semifield) -> SemifieldMap:
    """The map to the dual semifield (max <-> min)."""
    target = Semifield(sf.id.dual, exact=sf.exact, tolerance=sf.tolerance)
    return SemifieldMap(sf, target, "negate")


def logarithm(sf: Semifield, exact: bool = True) -> SemifieldMap:
    """``log2`` from a multiplicative semifield to the matching additive one.

    With ``exact`` the images are stored as rationals; this is lossless for
    the binary fractions ``math.log2`` returns, and exact for powers of two.
    """
    if sf.id.is_additive:
        raise ValueError(f"log2 needs max-times or min-times, not {sf.id.value}")
    target_id = SemifieldId.MAX_PLUS if sf.id.is_max else SemifieldId.MIN_PLUS
    target = Semifield(target_id, exact=exact, tolerance=sf.tolerance)
    return SemifieldMap(sf, target, "log2")
