"""Matrix and vector algebra over an idempotent semifield.

Matrices are dense and immutable; the zero element is stored explicitly.
Vectors are one-column matrices, and row vectors (such as conjugates of
vectors) are one-row matrices, so every product below is an ordinary matrix
product with ``max``/``min`` in place of the sum.

Besides arithmetic this module provides the closures the solvers are built
from: the Kleene star ``A*``, the plus-closure ``A+`` and the generator
solutions of ``Bx <= x`` and ``Cx = x``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from tropopt.errors import (
    AllZeroMatrix,
    Infeasible,
    NotRegular,
    NotSquare,
    ShapeMismatch,
    StarDiverges,
    TraceNotOne,
)
from tropopt.semifield import BOTTOM, Scalar, Semifield

Raw = Union[Scalar, int, Fraction, float, str, None]


@dataclass(frozen=True)
class TropMatrix:
    """A ``rows x cols`` matrix of scalars stored row-major."""

    sf: Semifield
    rows: int
    cols: int
    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ShapeMismatch("shape", f"empty shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                "shape",
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix",
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, sf: Semifield, rows: Sequence[Sequence[Raw]]) -> TropMatrix:
        if not rows or not rows[0]:
            raise ShapeMismatch("shape", "a matrix needs at least one row and column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ShapeMismatch("shape", "rows have different lengths")
        entries = tuple(sf.scalar(v) for row in rows for v in row)
        return cls(sf, len(rows), width, entries)

    @classmethod
    def column(cls, sf: Semifield, values: Iterable[Raw]) -> TropMatrix:
        """A column vector."""
        entries = tuple(sf.scalar(v) for v in values)
        return cls(sf, len(entries), 1, entries)

    @classmethod
    def row_vector(cls, sf: Semifield, values: Iterable[Raw]) -> TropMatrix:
        entries = tuple(sf.scalar(v) for v in values)
        return cls(sf, 1, len(entries), entries)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def dim(self) -> int:
        """Length of a column vector."""
        return self.rows

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(e.is_bottom for e in self.entries)

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i * self.cols + j]

    def at(self, i: int) -> Scalar:
        """Entry ``i`` of a vector (row or column)."""
        return self.entries[i]

    def row_at(self, i: int) -> TropMatrix:
        return TropMatrix(self.sf, 1, self.cols, self.entries[i * self.cols : (i + 1) * self.cols])

    def column_at(self, j: int) -> TropMatrix:
        return TropMatrix(self.sf, self.rows, 1, self.entries[j :: self.cols])

    def select_columns(self, indices: Sequence[int]) -> TropMatrix:
        """The submatrix made of the given columns, in the given order."""
        entries = tuple(self[i, j] for i in range(self.rows) for j in indices)
        return TropMatrix(self.sf, self.rows, len(indices), entries)

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> TropMatrix:
        entries = tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        return TropMatrix(self.sf, self.cols, self.rows, entries)

    # -- arithmetic -------------------------------------------------------

    def add(self, other: TropMatrix) -> TropMatrix:
        """Entrywise idempotent sum."""
        self._check_semifield(other)
        if self.shape != other.shape:
            raise ShapeMismatch("shape", f"cannot add {self.shape} and {other.shape}")
        sf = self.sf
        entries = tuple(sf.add(a, b) for a, b in zip(self.entries, other.entries))
        return TropMatrix(sf, self.rows, self.cols, entries)

    def mul(self, other: TropMatrix) -> TropMatrix:
        """Matrix product."""
        self._check_semifield(other)
        if self.cols != other.rows:
            raise ShapeMismatch("shape", f"cannot multiply {self.shape} by {other.shape}")
        sf = self.sf
        width = other.cols
        theirs = other.entries
        out: list[Scalar] = []
        for i in range(self.rows):
            row = self.entries[i * self.cols : (i + 1) * self.cols]
            for j in range(width):
                acc = BOTTOM
                for k, a in enumerate(row):
                    if a.value is not None:
                        acc = sf.add(acc, sf.mul(a, theirs[k * width + j]))
                out.append(acc)
        return TropMatrix(sf, self.rows, width, tuple(out))

    def scale(self, c: Scalar) -> TropMatrix:
        """Multiply every entry by the scalar ``c``."""
        sf = self.sf
        return TropMatrix(sf, self.rows, self.cols, tuple(sf.mul(c, e) for e in self.entries))

    def power(self, k: int) -> TropMatrix:
        """``A^k`` for ``k >= 0``; ``A^0`` is the identity."""
        if not self.is_square:
            raise NotSquare("square", f"power of a {self.rows}x{self.cols} matrix")
        if k < 0:
            raise ValueError("matrix powers must be non-negative")
        result = identity(self.sf, self.rows)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    def conj(self) -> TropMatrix:
        """Multiplicative conjugate transpose (see :func:`conjugate_transpose`)."""
        return conjugate_transpose(self)

    def __add__(self, other: TropMatrix) -> TropMatrix:
        return self.add(other)

    def __matmul__(self, other: TropMatrix) -> TropMatrix:
        return self.mul(other)

    # -- comparisons ------------------------------------------------------

    def leq(self, other: TropMatrix) -> bool:
        """Componentwise order."""
        if self.shape != other.shape:
            raise ShapeMismatch("shape", f"cannot compare {self.shape} and {other.shape}")
        return all(self.sf.leq(a, b) for a, b in zip(self.entries, other.entries))

    def equals(self, other: TropMatrix) -> bool:
        """Componentwise equality, tolerant in float mode."""
        if self.shape != other.shape:
            return False
        return all(self.sf.eq(a, b) for a, b in zip(self.entries, other.entries))

    def _check_semifield(self, other: TropMatrix) -> None:
        if self.sf.id is not other.sf.id:
            raise ShapeMismatch(
                "semifield", f"mixing {self.sf.id.value} with {other.sf.id.value}"
            )


TropVector = TropMatrix


@dataclass(frozen=True)
class RegularityClass:
    row_regular: bool
    column_regular: bool

    @property
    def regular(self) -> bool:
        return self.row_regular and self.column_regular


# -- constructors ------------------------------------------------------------


def zeros(sf: Semifield, rows: int, cols: int = 1) -> TropMatrix:
    return TropMatrix(sf, rows, cols, (BOTTOM,) * (rows * cols))


def identity(sf: Semifield, n: int) -> TropMatrix:
    one = sf.one
    entries = tuple(one if i == j else BOTTOM for i in range(n) for j in range(n))
    return TropMatrix(sf, n, n, entries)


def ones(sf: Semifield, n: int) -> TropVector:
    """The vector with every component equal to one."""
    return TropMatrix(sf, n, 1, (sf.one,) * n)


# -- operations --------------------------------------------------------------


def matrix_arithmetic(lhs: TropMatrix, rhs: TropMatrix | Scalar, which: str) -> TropMatrix:
    """Dispatch ``add``, ``mul`` or ``scale`` by name."""
    if which == "scale":
        if not isinstance(rhs, Scalar):
            raise TypeError("scale needs a Scalar right-hand side")
        return lhs.scale(rhs)
    if not isinstance(rhs, TropMatrix):
        raise TypeError(f"{which} needs a matrix right-hand side")
    if which == "add":
        return lhs.add(rhs)
    if which == "mul":
        return lhs.mul(rhs)
    raise ValueError(f"unknown matrix operation: {which!r}")


def conjugate_transpose(a: TropMatrix) -> TropMatrix:
    """Transpose with each non-zero entry replaced by its inverse."""
    if a.is_zero:
        raise AllZeroMatrix("A != 0", "the zero matrix has no conjugate")
    sf = a.sf
    entries = tuple(
        BOTTOM if a[i, j].is_bottom else sf.inverse(a[i, j])
        for j in range(a.cols)
        for i in range(a.rows)
    )
    return TropMatrix(sf, a.cols, a.rows, entries)


def norm(a: TropMatrix) -> Scalar:
    """Sum of all entries."""
    return a.sf.sum(a.entries)


def to_scalar(a: TropMatrix) -> Scalar:
    """The single entry of a ``1 x 1`` matrix."""
    if a.shape != (1, 1):
        raise ShapeMismatch("shape", f"expected a 1x1 matrix, got {a.shape}")
    return a.entries[0]


def require_square(a: TropMatrix, name: str = "A") -> int:
    if not a.is_square:
        raise NotSquare(f"{name} square", f"{name} is {a.rows}x{a.cols}, not square")
    return a.rows


def trace(a: TropMatrix) -> Scalar:
    n = require_square(a)
    return a.sf.sum(a[i, i] for i in range(n))


def tr_poly(a: TropMatrix) -> Scalar:
    """``Tr(A) = tr A + tr A^2 + ... + tr A^n``."""
    n = require_square(a)
    sf = a.sf
    total = BOTTOM
    power = a
    for m in range(1, n + 1):
        total = sf.add(total, trace(power))
        if m < n:
            power = power.mul(a)
    return total


def kleene_star(a: TropMatrix, name: str = "A") -> TropMatrix:
    """``A* = I + A + ... + A^(n-1)``, defined when ``Tr(A) <= 1``.

    Accumulated by repeated squaring of ``I + A``: ``(I + A)^m`` is the sum of
    all powers up to ``m`` and stops growing once ``m >= n - 1``.
    """
    n = require_square(a, name)
    sf = a.sf
    if not sf.leq(tr_poly(a), sf.one):
        raise StarDiverges(f"Tr({name}) > 1", f"Kleene star of {name} diverges")
    star = identity(sf, n).add(a)
    reach = 1
    while reach < n - 1:
        star = star.mul(star)
        reach *= 2
    return star


def plus_closure(a: TropMatrix, name: str = "A") -> TropMatrix:
    """Columns of ``A A*`` that carry one on the diagonal, in column order."""
    n = require_square(a, name)
    sf = a.sf
    if not sf.eq(tr_poly(a), sf.one):
        raise TraceNotOne(f"Tr({name}) != 1", f"plus-closure of {name} needs Tr({name}) = 1")
    cross = a.mul(kleene_star(a, name))
    keep = [j for j in range(n) if sf.eq(cross[j, j], sf.one)]
    assert keep, "Tr(A) = 1 guarantees a critical column"
    return cross.select_columns(keep)


def classify_regularity(a: TropMatrix) -> RegularityClass:
    rows = all(any(not a[i, j].is_bottom for j in range(a.cols)) for i in range(a.rows))
    cols = all(any(not a[i, j].is_bottom for i in range(a.rows)) for j in range(a.cols))
    return RegularityClass(row_regular=rows, column_regular=cols)


def is_regular(v: TropMatrix) -> bool:
    """Whether no entry is zero."""
    return not any(e.is_bottom for e in v.entries)


def is_nonzero(v: TropMatrix) -> bool:
    return not v.is_zero


def solve_order_inequality(b: TropMatrix) -> TropMatrix:
    """Generator ``B*`` of all regular solutions of ``Bx <= x``."""
    require_square(b, "B")
    sf = b.sf
    if not sf.leq(tr_poly(b), sf.one):
        raise Infeasible("Tr(B) > 1", "Bx <= x has no regular solution")
    return kleene_star(b, "B")


def solve_fixpoint_equation(c: TropMatrix) -> TropMatrix:
    """Generator ``C+`` of all solutions of ``Cx = x``."""
    require_square(c, "C")
    sf = c.sf
    if not sf.eq(tr_poly(c), sf.one):
        raise Infeasible("Tr(C) != 1", "Cx = x needs Tr(C) = 1")
    return plus_closure(c, "C")


def residuate(a: TropMatrix, p: TropVector) -> TropVector:
    """Greatest solution ``x = (p^- A)^-`` of ``Ax <= p``."""
    if p.cols != 1 or a.rows != p.rows:
        raise ShapeMismatch("shape", f"cannot residuate {a.shape} against {p.shape}")
    if not is_regular(p):
        raise NotRegular("p not regular", "residuation needs a regular right-hand side")
    if not classify_regularity(a).column_regular:
        raise NotRegular("A not column-regular", "residuation needs a column-regular matrix")
    return p.conj().mul(a).conj()
