"""Problem forms supported by the solvers.

Each form fixes the objective, the constraints, the optimization sense and
the named data it needs. Field shapes are written with dimension symbols
(``n`` is always the size of the unknown vector ``x``) so instances can be
checked for consistent dimensions before any solver runs.
"""

from __future__ import annotations

from enum import Enum


class Sense(str, Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ProblemForm(str, Enum):
    """The optimization problems with closed-form solutions.

    Values are the form identifiers used in instance files.
    """

    RAYLEIGH = "P3-rayleigh"
    CHEBY_BOX = "P4-cheby-box"
    CHEBY_LOWER = "P5-cheby-lower"
    CHEBY_INEQ_BOX = "P6-cheby-ineq-box"
    CHEBY_INEQ = "P8-cheby-ineq"
    SPAN_MIN = "P9-span-min"
    SPAN_MIN_EQINEQ = "P10-span-min-eqineq"
    SPAN_MAX = "P11-span-max"
    SPAN_MAX_INEQ = "P13-span-max-ineq"
    SPAN_MAX_EQ = "P14-span-max-eq"
    RAYLEIGH_AFFINE = "P15-rayleigh-affine"
    RAYLEIGH_FULL = "P16-rayleigh-full"
    RAYLEIGH_INEQ = "P17-rayleigh-ineq"
    RAYLEIGH_BOX = "P18-rayleigh-box"
    RAYLEIGH_P_INEQ = "P19-rayleigh-p-ineq"
    CHEBY_UNDER = "cheby-under"
    CHEBY_OVER = "cheby-over"

    @property
    def label(self) -> str:
        """Objective and constraints in ASCII notation."""
        return _LABELS[self]

    @property
    def sense(self) -> Sense:
        if self in (ProblemForm.SPAN_MAX, ProblemForm.SPAN_MAX_INEQ, ProblemForm.SPAN_MAX_EQ):
            return Sense.MAXIMIZE
        return Sense.MINIMIZE

    @property
    def shapes(self) -> dict[str, tuple[str, ...]]:
        """Dimension symbols of every field the form accepts."""
        return {name: shape for name, (shape, _) in _SCHEMA[self].items()}

    @property
    def required(self) -> tuple[str, ...]:
        return tuple(name for name, (_, required) in _SCHEMA[self].items() if required)

    @property
    def optional(self) -> tuple[str, ...]:
        return tuple(name for name, (_, required) in _SCHEMA[self].items() if not required)


def field_kind(name: str) -> str:
    """``matrix`` for upper-case names, ``scalar`` for ``c``, else ``vector``."""
    if name.isupper():
        return "matrix"
    if name == "c":
        return "scalar"
    return "vector"


_SQUARE = ("n", "n")
_N = ("n",)
_M = ("m",)

# name -> (shape symbols, required)
_SCHEMA: dict[ProblemForm, dict[str, tuple[tuple[str, ...], bool]]] = {
    ProblemForm.RAYLEIGH: {"A": (_SQUARE, True)},
    ProblemForm.CHEBY_BOX: {
        "p": (_N, True),
        "q": (_N, True),
        "g": (_N, True),
        "h": (_N, True),
    },
    ProblemForm.CHEBY_LOWER: {
        "A": (("m", "n"), True),
        "p": (_M, True),
        "q": (_M, True),
        "g": (_N, False),
    },
    ProblemForm.CHEBY_INEQ_BOX: {
        "B": (_SQUARE, True),
        "p": (_N, True),
        "q": (_N, True),
        "g": (_N, True),
        "h": (_N, True),
    },
    ProblemForm.CHEBY_INEQ: {
        "B": (_SQUARE, True),
        "p": (_N, True),
        "q": (_N, True),
        "g": (_N, False),
    },
    ProblemForm.SPAN_MIN: {
        "A": (("m", "n"), True),
        "B": (("m", "n"), True),
        "p": (_M, True),
        "q": (_M, True),
    },
    ProblemForm.SPAN_MIN_EQINEQ: {"C": (("m", "n"), True), "D": (_SQUARE, True)},
    ProblemForm.SPAN_MAX: {
        "A": (("m", "n"), True),
        "B": (("l", "n"), True),
        "p": (_M, True),
        "q": (("l",), True),
    },
    ProblemForm.SPAN_MAX_INEQ: {
        "A": (("m", "n"), True),
        "B": (("l", "n"), True),
        "C": (_SQUARE, True),
        "p": (_M, True),
        "q": (("l",), True),
    },
    ProblemForm.SPAN_MAX_EQ: {
        "A": (("m", "n"), True),
        "B": (("l", "n"), True),
        "C": (_SQUARE, True),
        "p": (_M, True),
        "q": (("l",), True),
    },
    ProblemForm.RAYLEIGH_AFFINE: {
        "A": (_SQUARE, True),
        "p": (_N, True),
        "q": (_N, True),
        "c": ((), False),
    },
    ProblemForm.RAYLEIGH_FULL: {
        "A": (_SQUARE, True),
        "B": (_SQUARE, True),
        "C": (("m", "n"), True),
        "g": (_N, True),
        "h": (_M, True),
    },
    ProblemForm.RAYLEIGH_INEQ: {
        "A": (_SQUARE, True),
        "B": (_SQUARE, True),
        "g": (_N, False),
    },
    ProblemForm.RAYLEIGH_BOX: {
        "A": (_SQUARE, True),
        "g": (_N, True),
        "h": (_N, True),
    },
    ProblemForm.RAYLEIGH_P_INEQ: {
        "A": (_SQUARE, True),
        "B": (_SQUARE, True),
        "p": (_N, True),
        "g": (_N, False),
    },
    ProblemForm.CHEBY_UNDER: {"A": (("m", "n"), True), "p": (_M, True)},
    ProblemForm.CHEBY_OVER: {"A": (("m", "n"), True), "p": (_M, True)},
}

_LABELS: dict[ProblemForm, str] = {
    ProblemForm.RAYLEIGH: "min x^-Ax",
    ProblemForm.CHEBY_BOX: "min q^-x + x^-p s.t. g <= x <= h",
    ProblemForm.CHEBY_LOWER: "min q^-Ax + (Ax)^-p s.t. x >= g",
    ProblemForm.CHEBY_INEQ_BOX: "min x^-p + q^-x s.t. Bx + g <= x, x <= h",
    ProblemForm.CHEBY_INEQ: "min x^-p + q^-x s.t. Bx + g <= x",
    ProblemForm.SPAN_MIN: "min q^-Bx (Ax)^-p",
    ProblemForm.SPAN_MIN_EQINEQ: "min 1^Ty y^-1 s.t. y = Cx, Dx <= x",
    ProblemForm.SPAN_MAX: "max q^-Bx (Ax)^-p",
    ProblemForm.SPAN_MAX_INEQ: "max q^-Bx (Ax)^-p s.t. Cx <= x",
    ProblemForm.SPAN_MAX_EQ: "max q^-Bx (Ax)^-p s.t. Cx = x",
    ProblemForm.RAYLEIGH_AFFINE: "min x^-Ax + x^-p + q^-x + c",
    ProblemForm.RAYLEIGH_FULL: "min x^-Ax s.t. Bx + g <= x, Cx <= h",
    ProblemForm.RAYLEIGH_INEQ: "min x^-Ax s.t. Bx + g <= x",
    ProblemForm.RAYLEIGH_BOX: "min x^-Ax s.t. g <= x <= h",
    ProblemForm.RAYLEIGH_P_INEQ: "min x^-Ax + x^-p s.t. Bx + g <= x",
    ProblemForm.CHEBY_UNDER: "min (Ax)^-p s.t. Ax <= p",
    ProblemForm.CHEBY_OVER: "min p^-Ax s.t. Ax >= p",
}
