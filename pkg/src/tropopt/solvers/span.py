"""Span-seminorm problems: minimize or maximize ``q^- Bx (Ax)^- p``.

With ``A = B`` and ``p = q = 1`` the objective is the span seminorm
``1^T Ax (Ax)^- 1``, the ratio (difference in max-plus) of the largest and the
smallest component of ``Ax``.
"""

from __future__ import annotations

import logging
from typing import Literal

from tropopt.errors import Infeasible, NotRegular, ShapeMismatch
from tropopt.forms import Sense
from tropopt.model import GeneratedCone, OptimumReport, PinnedScaledBox, Substituted
from tropopt.semifield import Scalar, Semifield
from tropopt.solvers.preconditions import Checks
from tropopt.tropalg import (
    TropMatrix,
    TropVector,
    classify_regularity,
    ones,
    plus_closure,
    to_scalar,
    tr_poly,
    zeros,
)

logger = logging.getLogger(__name__)

ConstraintKind = Literal["inequality", "equality"]


def span_min(a: TropMatrix, b: TropMatrix, p: TropVector, q: TropVector) -> OptimumReport:
    """Minimize ``q^- Bx (Ax)^- p``.

    The minimum is ``(A(q^- B)^-)^- p``, attained on the ray
    ``x = alpha (q^- B)^-``.
    """
    checks = Checks()
    _check_pair(a, b, p, q)
    checks.row_regular(a, "A")
    checks.column_regular(b, "B")
    checks.nonzero(p, "p")
    checks.regular(q, "q")

    generator = q.conj().mul(b).conj()
    value = to_scalar(a.mul(generator).conj().mul(p))
    logger.debug("span_min: value=%s", value)
    return OptimumReport(
        value=value,
        solution_set=GeneratedCone(generator, zeros(a.sf, 1)),
        witness=generator,
        sense=Sense.MINIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def span_min_seminorm(a: TropMatrix) -> OptimumReport:
    """Minimize the span seminorm of ``Ax``."""
    unit = ones(a.sf, a.rows)
    return span_min(a, a, unit, unit)


def span_min_constrained(c: TropMatrix, d: TropMatrix) -> OptimumReport:
    """Minimize the span seminorm of ``y = Cx`` subject to ``Dx <= x``.

    The minimum is ``(C D* (1^T C D*)^-)^- 1``, attained on the ray
    ``x = alpha D* (1^T C D*)^-``.
    """
    sf = c.sf
    checks = Checks()
    checks.square(d, "D", c.cols)
    checks.regular_matrix(c, "C")
    star = checks.star(d, "D")

    unit = ones(sf, c.rows)
    cs = c.mul(star)
    scale = unit.transpose().mul(cs).conj()
    generator = star.mul(scale)
    value = to_scalar(cs.mul(scale).conj().mul(unit))
    logger.debug("span_min_constrained: value=%s", value)
    return OptimumReport(
        value=value,
        solution_set=GeneratedCone(generator, zeros(sf, 1)),
        witness=generator,
        sense=Sense.MINIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def span_max(a: TropMatrix, b: TropMatrix, p: TropVector, q: TropVector) -> OptimumReport:
    """Maximize ``q^- Bx (Ax)^- p`` over regular ``x``.

    The maximum is ``q^- B A^- p``. With ``k`` the column index attaining it
    and ``s`` the row index attaining ``a_k^- p``, every ``x`` with
    ``x_k = alpha a_k^- p`` and ``x_j <= alpha a_sj^-1 p_s`` is a maximizer.
    Ties are broken by the smallest index.
    """
    sf = a.sf
    checks = Checks()
    _check_dims(a, b, p, q)
    checks.finite(a, "A")
    checks.column_regular(b, "B")
    checks.regular(p, "p")
    checks.regular(q, "q")

    n = a.cols
    q_conj = q.conj()
    weights = [
        sf.mul(to_scalar(q_conj.mul(b.column_at(j))), to_scalar(a.column_at(j).conj().mul(p)))
        for j in range(n)
    ]
    value = sf.sum(weights)
    k = _first_maximum(sf, weights, value)
    ratios = [sf.div(p.at(i), a[i, k]) for i in range(a.rows)]
    pin = sf.sum(ratios)
    s = _first_maximum(sf, ratios, pin)
    caps = TropMatrix(sf, n, 1, tuple(sf.div(p.at(s), a[s, j]) for j in range(n)))
    logger.debug("span_max: value=%s k=%d s=%d", value, k, s)
    return OptimumReport(
        value=value,
        solution_set=PinnedScaledBox(k=k, s=s, pin=pin, caps=caps),
        witness=caps,
        sense=Sense.MAXIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def span_max_norm(a: TropMatrix, b: TropMatrix) -> OptimumReport:
    """Maximize ``1^T Bx (Ax)^- 1``."""
    return span_max(a, b, ones(a.sf, a.rows), ones(a.sf, b.rows))


def span_max_constrained(
    a: TropMatrix,
    b: TropMatrix,
    c: TropMatrix,
    p: TropVector,
    q: TropVector,
    kind: ConstraintKind = "inequality",
) -> OptimumReport:
    """Maximize ``q^- Bx (Ax)^- p`` subject to ``Cx <= x`` or ``Cx = x``.

    Every regular solution of the constraint is ``x = G u`` with ``G = C*``
    (inequality) or ``G = C+`` (equality); the problem then reduces to
    :func:`span_max` for ``AG`` and ``BG``.

    A zero row of ``C+`` forces a zero component in every solution of
    ``Cx = x``, so that case raises :class:`Infeasible` rather than
    :class:`NotRegular`: the constraint has no regular solution at all.
    """
    sf = c.sf
    checks = Checks()
    checks.square(c, "C", a.cols)
    if kind == "inequality":
        generator = checks.star(c, "C")
    elif kind == "equality":
        if not sf.eq(tr_poly(c), sf.one):
            raise Infeasible("Tr(C) != 1", "Cx = x has no non-zero solution")
        checks.note("Tr(C) = 1")
        generator = plus_closure(c, "C")
        if not classify_regularity(generator).row_regular:
            raise Infeasible("Cx = x has no regular solution", "C+ has a zero row")
        checks.note("C+ row-regular")
    else:
        raise ValueError(f"unknown constraint kind: {kind!r}")

    try:
        inner = span_max(a.mul(generator), b.mul(generator), p, q)
    except NotRegular as exc:
        raise NotRegular(
            f"{exc.condition} after substitution", f"substituted problem: {exc}"
        ) from exc
    return OptimumReport(
        value=inner.value,
        solution_set=Substituted(generator, inner.solution_set),
        witness=generator.mul(inner.witness),
        sense=Sense.MAXIMIZE,
        complete=False,
        diagnostics=checks.diagnostics + inner.diagnostics,
    )


def _first_maximum(sf: Semifield, values: list[Scalar], best: Scalar) -> int:
    return next(i for i, v in enumerate(values) if sf.eq(v, best))


def _check_dims(a: TropMatrix, b: TropMatrix, p: TropVector, q: TropVector) -> None:
    if a.cols != b.cols:
        raise ShapeMismatch(
            "shape", f"A and B need the same number of columns: {a.shape}, {b.shape}"
        )
    if p.cols != 1 or p.rows != a.rows:
        raise ShapeMismatch("shape", f"p must have length {a.rows}")
    if q.cols != 1 or q.rows != b.rows:
        raise ShapeMismatch("shape", f"q must have length {b.rows}")


def _check_pair(a: TropMatrix, b: TropMatrix, p: TropVector, q: TropVector) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch("shape", f"A and B must have the same shape: {a.shape}, {b.shape}")
    _check_dims(a, b, p, q)
