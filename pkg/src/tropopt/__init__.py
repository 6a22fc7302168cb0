"""tropopt: closed-form tropical optimization with a brute-force verifier.

Solve Chebyshev approximation, span seminorm and Rayleigh quotient problems
over the max-plus, min-plus, max-times and min-times semifields, get the
optimal value together with a description of every optimal point, and check
the answer against an exhaustive grid search.

Exact rational arithmetic is the default for max-plus and min-plus; set
``TROPOPT_MODE=float`` to compute with floats instead.
"""

from tropopt.config import Settings
from tropopt.errors import (
    PreconditionError,
    SchemaError,
    TropicalError,
    VerificationFailure,
)
from tropopt.forms import ProblemForm, Sense
from tropopt.model import OptimumReport, ProblemInstance
from tropopt.semifield import BOTTOM, MAX_PLUS, MAX_TIMES, MIN_PLUS, MIN_TIMES, Scalar, Semifield
from tropopt.tropalg import TropMatrix

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "MAX_PLUS",
    "MAX_TIMES",
    "MIN_PLUS",
    "MIN_TIMES",
    "OptimumReport",
    "PreconditionError",
    "ProblemForm",
    "ProblemInstance",
    "Scalar",
    "SchemaError",
    "Semifield",
    "Sense",
    "Settings",
    "TropMatrix",
    "TropicalError",
    "VerificationFailure",
    "__version__",
]
