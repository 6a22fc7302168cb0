"""Closed-form solvers and the dispatch from problem instances to them."""

from __future__ import annotations

import logging

from tropopt.config import Settings
from tropopt.forms import ProblemForm
from tropopt.model import OptimumReport, ProblemInstance
from tropopt.solvers.chebyshev import (
    cheby_approx,
    cheby_box,
    cheby_ineq,
    cheby_lower,
    cheby_over,
    cheby_under,
)
from tropopt.solvers.rayleigh import (
    compositions,
    rayleigh,
    rayleigh_affine,
    rayleigh_box,
    rayleigh_full,
    rayleigh_ineq,
    rayleigh_p_ineq,
)
from tropopt.solvers.span import (
    span_max,
    span_max_constrained,
    span_max_norm,
    span_min,
    span_min_constrained,
    span_min_seminorm,
)

__all__ = [
    "cheby_approx",
    "cheby_box",
    "cheby_ineq",
    "cheby_lower",
    "cheby_over",
    "cheby_under",
    "compositions",
    "rayleigh",
    "rayleigh_affine",
    "rayleigh_box",
    "rayleigh_full",
    "rayleigh_ineq",
    "rayleigh_p_ineq",
    "solve",
    "span_max",
    "span_max_constrained",
    "span_max_norm",
    "span_min",
    "span_min_constrained",
    "span_min_seminorm",
]

logger = logging.getLogger(__name__)


def solve(instance: ProblemInstance, settings: Settings | None = None) -> OptimumReport:
    """Run the solver for ``instance.form`` on the instance data."""
    settings = settings or Settings()
    limit = settings.max_composition_dim
    m = instance.optional_matrix
    logger.debug("solving %s over %s", instance.form.value, instance.sf.id.value)
    match instance.form:
        case ProblemForm.RAYLEIGH:
            return rayleigh(m("A"))
        case ProblemForm.CHEBY_BOX:
            return cheby_box(m("p"), m("q"), m("g"), m("h"))
        case ProblemForm.CHEBY_LOWER:
            return cheby_lower(m("A"), m("p"), m("q"), m("g"))
        case ProblemForm.CHEBY_INEQ_BOX:
            return cheby_ineq(m("B"), m("p"), m("q"), m("g"), m("h"))
        case ProblemForm.CHEBY_INEQ:
            return cheby_ineq(m("B"), m("p"), m("q"), m("g"))
        case ProblemForm.SPAN_MIN:
            return span_min(m("A"), m("B"), m("p"), m("q"))
        case ProblemForm.SPAN_MIN_EQINEQ:
            return span_min_constrained(m("C"), m("D"))
        case ProblemForm.SPAN_MAX:
            return span_max(m("A"), m("B"), m("p"), m("q"))
        case ProblemForm.SPAN_MAX_INEQ:
            return span_max_constrained(m("A"), m("B"), m("C"), m("p"), m("q"), "inequality")
        case ProblemForm.SPAN_MAX_EQ:
            return span_max_constrained(m("A"), m("B"), m("C"), m("p"), m("q"), "equality")
        case ProblemForm.RAYLEIGH_AFFINE:
            return rayleigh_affine(m("A"), m("p"), m("q"), instance.scalar("c"))
        case ProblemForm.RAYLEIGH_FULL:
            return rayleigh_full(m("A"), m("B"), m("C"), m("g"), m("h"), max_dim=limit)
        case ProblemForm.RAYLEIGH_INEQ:
            return rayleigh_ineq(m("A"), m("B"), m("g"), max_dim=limit)
        case ProblemForm.RAYLEIGH_BOX:
            return rayleigh_box(m("A"), m("g"), m("h"))
        case ProblemForm.RAYLEIGH_P_INEQ:
            return rayleigh_p_ineq(m("A"), m("B"), m("p"), m("g"), max_dim=limit)
        case ProblemForm.CHEBY_UNDER:
            return cheby_under(m("A"), m("p"))
        case ProblemForm.CHEBY_OVER:
            return cheby_over(m("A"), m("p"))
    raise ValueError(f"no solver for {instance.form!r}")
