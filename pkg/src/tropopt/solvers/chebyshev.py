"""Chebyshev-like approximation problems.

Objectives here are sums of the form ``q^- x + x^- p`` (or the same with
``Ax`` in place of ``x``): the best "distance" from the points ``p`` below and
``q`` above. All of them are minimized.
"""

from __future__ import annotations

import logging

from tropopt.errors import Infeasible, ShapeMismatch
from tropopt.forms import Sense
from tropopt.model import GeneratedInterval, Interval, OptimumReport
from tropopt.solvers.preconditions import Checks, witness_argument
from tropopt.tropalg import TropMatrix, TropVector, residuate, to_scalar, zeros

logger = logging.getLogger(__name__)


def cheby_box(p: TropVector, q: TropVector, g: TropVector, h: TropVector) -> OptimumReport:
    """Minimize ``q^- x + x^- p`` subject to ``g <= x <= h``.

    The minimum is ``mu = (q^- p)^(1/2) + q^- g + h^- p`` and the minimizers
    are exactly ``mu^-1 p + g <= x <= (mu^-1 q^- + h^-)^-``.
    """
    sf = p.sf
    checks = Checks()
    n = checks.vector(p, "p")
    for v, name in ((q, "q"), (g, "g"), (h, "h")):
        checks.vector(v, name, n)
    checks.regular(p, "p")
    checks.regular(q, "q")
    checks.ordered(g, h)
    checks.regular(h, "h")

    q_conj = q.conj()
    distance = sf.root(to_scalar(q_conj.mul(p)), 2)
    mu = sf.sum((distance, to_scalar(q_conj.mul(g)), to_scalar(h.conj().mul(p))))
    mu_inv = sf.inverse(mu)
    lower = p.scale(mu_inv).add(g)
    upper = q_conj.scale(mu_inv).add(h.conj()).conj()
    logger.debug("cheby_box: mu=%s", mu)
    return OptimumReport(
        value=mu,
        solution_set=Interval(lower, upper),
        witness=lower,
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def cheby_lower(
    a: TropMatrix, p: TropVector, q: TropVector, g: TropVector | None = None
) -> OptimumReport:
    """Minimize ``q^- Ax + (Ax)^- p`` subject to ``x >= g``.

    The minimum is ``mu = ((A(q^- A)^-)^- p)^(1/2) + q^- A g``, attained at
    ``x = mu (q^- A)^-``. The report holds this single point; other
    minimizers may exist.
    """
    sf = a.sf
    checks = Checks()
    checks.vector(p, "p", a.rows)
    checks.vector(q, "q", a.rows)
    g = zeros(sf, a.cols) if g is None else g
    checks.vector(g, "g", a.cols)
    checks.regular_matrix(a, "A")
    checks.regular(p, "p")
    checks.regular(q, "q")

    qa = q.conj().mul(a)
    base = qa.conj()
    distance = sf.root(to_scalar(a.mul(base).conj().mul(p)), 2)
    mu = sf.add(distance, to_scalar(qa.mul(g)))
    x = base.scale(mu)
    logger.debug("cheby_lower: mu=%s", mu)
    return OptimumReport(
        value=mu,
        solution_set=Interval(x, x),
        witness=x,
        sense=Sense.MINIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def cheby_approx(a: TropMatrix, p: TropVector) -> OptimumReport:
    """Best approximate solution of ``Ax = p`` in the metric ``p^- Ax + (Ax)^- p``."""
    return cheby_lower(a, p, p)


def cheby_ineq(
    b: TropMatrix,
    p: TropVector,
    q: TropVector,
    g: TropVector | None = None,
    h: TropVector | None = None,
) -> OptimumReport:
    """Minimize ``x^- p + q^- x`` subject to ``Bx + g <= x`` and, if given, ``x <= h``.

    With ``theta = (q^- B* p)^(1/2) + q^- B* g`` (plus ``h^- B* p`` when ``h``
    is given) the minimizers are ``B* u`` with
    ``g + theta^-1 p <= u <= ((h^- + theta^-1 q^-) B*)^-``.
    """
    sf = b.sf
    checks = Checks()
    n = checks.square(b, "B")
    checks.vector(p, "p", n)
    checks.vector(q, "q", n)
    g = zeros(sf, n) if g is None else g
    checks.vector(g, "g", n)
    checks.nonzero(p, "p")
    checks.regular(q, "q")
    star = checks.star(b, "B")

    qs = q.conj().mul(star)
    theta = sf.add(sf.root(to_scalar(qs.mul(p)), 2), to_scalar(qs.mul(g)))
    hs = None
    if h is not None:
        checks.vector(h, "h", n)
        checks.regular(h, "h")
        hs = h.conj().mul(star)
        checks.at_most_one(to_scalar(hs.mul(g)), "h^-B*g", sf)
        theta = sf.add(theta, to_scalar(hs.mul(p)))

    theta_inv = sf.inverse(theta)
    lower = g.add(p.scale(theta_inv))
    bound = qs.scale(theta_inv)
    if hs is not None:
        bound = bound.add(hs)
    upper = bound.conj()
    if not lower.leq(upper):
        raise Infeasible("empty solution set", "lower bound exceeds upper bound")
    witness = star.mul(witness_argument(lower, upper))
    logger.debug("cheby_ineq: theta=%s", theta)
    return OptimumReport(
        value=theta,
        solution_set=GeneratedInterval(star, lower, upper),
        witness=witness,
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def cheby_under(a: TropMatrix, p: TropVector) -> OptimumReport:
    """Best approximation of ``p`` from below: minimize ``(Ax)^- p`` subject to ``Ax <= p``.

    The greatest solution ``x = (p^- A)^-`` of ``Ax <= p`` is optimal.
    """
    checks = Checks()
    _check_approx(checks, a, p)
    x = residuate(a, p)
    value = to_scalar(a.mul(x).conj().mul(p))
    return OptimumReport(
        value=value,
        solution_set=Interval(x, x),
        witness=x,
        sense=Sense.MINIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def cheby_over(a: TropMatrix, p: TropVector) -> OptimumReport:
    """Best approximation of ``p`` from above: minimize ``p^- Ax`` subject to ``Ax >= p``.

    The optimum equals the one from below and is attained at ``delta (p^- A)^-``.
    """
    checks = Checks()
    _check_approx(checks, a, p)
    base = residuate(a, p)
    value = to_scalar(a.mul(base).conj().mul(p))
    x = base.scale(value)
    return OptimumReport(
        value=value,
        solution_set=Interval(x, x),
        witness=x,
        sense=Sense.MINIMIZE,
        complete=False,
        diagnostics=checks.diagnostics,
    )


def _check_approx(checks: Checks, a: TropMatrix, p: TropVector) -> None:
    if p.cols != 1 or p.rows != a.rows:
        raise ShapeMismatch("shape", f"p must have length {a.rows}")
    checks.regular_matrix(a, "A")
    checks.regular(p, "p")
