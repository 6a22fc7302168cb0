"""Problem instances, solution sets and optimum reports.

A :class:`ProblemInstance` binds a :class:`~tropopt.forms.ProblemForm` to its
named data over one semifield and checks that every field has the right kind
and that all dimensions agree. Solvers return an :class:`OptimumReport`: the
optimal value, a description of the optimal set and one concrete optimal
point.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import ClassVar, Union

from tropopt.errors import SchemaError, ShapeMismatch
from tropopt.forms import ProblemForm, Sense, field_kind
from tropopt.semifield import Scalar, Semifield
from tropopt.tropalg import TropMatrix, TropVector

Datum = Union[TropMatrix, Scalar]


@dataclass(frozen=True)
class ProblemInstance:
    """One optimization problem: a form, a semifield and the named data.

    Optional fields that are absent are simply missing from ``data``; solvers
    substitute their defaults.
    """

    sf: Semifield
    form: ProblemForm
    data: Mapping[str, Datum] = field(default_factory=dict)

    def __post_init__(self) -> None:
        accepted = self.form.shapes
        missing = [name for name in self.form.required if name not in self.data]
        if missing:
            raise SchemaError(
                "fields", f"{self.form.value} needs {', '.join(missing)}"
            )
        unknown = sorted(set(self.data) - set(accepted))
        if unknown:
            raise SchemaError(
                "fields", f"{self.form.value} does not take {', '.join(unknown)}"
            )
        sizes: dict[str, int] = {}
        for name, value in self.data.items():
            self._check_kind(name, value)
            if isinstance(value, TropMatrix):
                _bind(sizes, name, accepted[name], value.shape)

    def _check_kind(self, name: str, value: Datum) -> None:
        kind = field_kind(name)
        if kind == "scalar":
            if not isinstance(value, Scalar):
                raise SchemaError(name, f"{name} must be a scalar")
            return
        if not isinstance(value, TropMatrix):
            raise SchemaError(name, f"{name} must be a {kind}")
        if value.sf.id is not self.sf.id:
            raise SchemaError(
                name, f"{name} is over {value.sf.id.value}, not {self.sf.id.value}"
            )
        if kind == "vector" and value.cols != 1:
            raise SchemaError(name, f"{name} must be a vector")

    def get(self, name: str) -> Datum | None:
        return self.data.get(name)

    def matrix(self, name: str) -> TropMatrix:
        value = self.data[name]
        assert isinstance(value, TropMatrix)
        return value

    def optional_matrix(self, name: str) -> TropMatrix | None:
        value = self.data.get(name)
        return value if isinstance(value, TropMatrix) else None

    def scalar(self, name: str) -> Scalar | None:
        value = self.data.get(name)
        return value if isinstance(value, Scalar) else None

    @property
    def dim(self) -> int:
        """Size ``n`` of the unknown vector."""
        for name, symbols in self.form.shapes.items():
            value = self.data.get(name)
            if isinstance(value, TropMatrix) and "n" in symbols:
                return value.shape[symbols.index("n")]
        raise SchemaError("fields", "no field fixes the dimension of x")


def _bind(
    sizes: dict[str, int], name: str, symbols: tuple[str, ...], shape: tuple[int, int]
) -> None:
    actual = shape if len(symbols) == 2 else (shape[0],)
    for symbol, size in zip(symbols, actual):
        expected = sizes.setdefault(symbol, size)
        if expected != size:
            raise ShapeMismatch(
                "shape", f"{name} has {symbol}={size}, other fields have {symbol}={expected}"
            )


# -- solution sets -----------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """All ``x`` with ``lower <= x <= upper``."""

    kind: ClassVar[str] = "interval"
    lower: TropVector
    upper: TropVector

    def contains(self, x: TropVector) -> bool:
        return self.lower.leq(x) and x.leq(self.upper)


@dataclass(frozen=True)
class GeneratedInterval:
    """All ``generator u`` with ``u_lower <= u <= u_upper``.

    Components of ``u_lower`` may be zero; ``u_upper`` is regular.
    """

    kind: ClassVar[str] = "generated-interval"
    generator: TropMatrix
    u_lower: TropVector
    u_upper: TropVector

    def point(self, u: TropVector) -> TropVector:
        return self.generator.mul(u)


@dataclass(frozen=True)
class GeneratedCone:
    """All ``generator u`` with ``u >= u_lower`` and ``u`` regular."""

    kind: ClassVar[str] = "generated-cone"
    generator: TropMatrix
    u_lower: TropVector

    def point(self, u: TropVector) -> TropVector:
        return self.generator.mul(u)


@dataclass(frozen=True)
class PinnedScaledBox:
    """All ``x`` with ``x_k = alpha pin`` and ``x_j <= alpha caps_j`` for ``alpha > 0``.

    ``caps[k]`` equals ``pin``. Indices are 0-based.
    """

    kind: ClassVar[str] = "pinned-scaled-box"
    k: int
    s: int
    pin: Scalar
    caps: TropVector


@dataclass(frozen=True)
class Substituted:
    """All ``outer u`` with ``u`` in ``inner``."""

    kind: ClassVar[str] = "substituted"
    outer: TropMatrix
    inner: SolutionSet


SolutionSet = Union[Interval, GeneratedInterval, GeneratedCone, PinnedScaledBox, Substituted]


@dataclass(frozen=True)
class OptimumReport:
    """Result of one solver call.

    ``complete`` tells whether ``solution_set`` is the whole optimal set or
    only a family of optimal points.
    """

    value: Scalar
    solution_set: SolutionSet
    witness: TropVector
    sense: Sense
    complete: bool = True
    diagnostics: tuple[str, ...] = ()
