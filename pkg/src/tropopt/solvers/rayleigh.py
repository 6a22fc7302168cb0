"""Problems built on the tropical Rayleigh quotient ``x^- Ax``.

Without constraints the minimum of ``x^- Ax`` is the spectral radius
``lambda`` of ``A``. Constraints and extra terms raise the minimum to a value
``theta >= lambda`` given by traces of products of ``A`` with the constraint
matrices; the minimizers are then generated by ``(theta^-1 A + B)*``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator

from tropopt.config import MAX_COMPOSITION_DIM
from tropopt.errors import ShapeMismatch
from tropopt.forms import Sense
from tropopt.model import GeneratedCone, GeneratedInterval, OptimumReport
from tropopt.semifield import Scalar
from tropopt.solvers.preconditions import Checks, witness_argument
from tropopt.tropalg import (
    TropMatrix,
    TropVector,
    identity,
    kleene_star,
    ones,
    to_scalar,
    trace,
    zeros,
)

logger = logging.getLogger(__name__)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def rayleigh(a: TropMatrix) -> OptimumReport:
    """Minimize ``x^- Ax``.

    The minimum is ``lambda`` and the minimizers are ``(lambda^-1 A)* u``
    for all regular ``u``.
    """
    checks = Checks()
    radius = checks.radius(a)
    star = kleene_star(a.scale(a.sf.inverse(radius)))
    lower = zeros(a.sf, a.rows)
    logger.debug("rayleigh: lambda=%s", radius)
    return OptimumReport(
        value=radius,
        solution_set=GeneratedCone(star, lower),
        witness=star.mul(ones(a.sf, a.rows)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def rayleigh_affine(
    a: TropMatrix, p: TropVector, q: TropVector, c: Scalar | None = None
) -> OptimumReport:
    """Minimize ``x^- Ax + x^- p + q^- x + c``.

    ``mu = lambda + sum_m (q^- A^(m-1) p)^(1/(m+1)) + c``; the minimizers are
    ``S u`` with ``S = (mu^-1 A)*`` and ``mu^-1 p <= u <= mu (q^- S)^-``.
    """
    sf = a.sf
    checks = Checks()
    radius = checks.radius(a)
    n = a.rows
    checks.vector(p, "p", n)
    checks.vector(q, "q", n)
    checks.regular(q, "q")

    q_conj = q.conj()
    mu = sf.add(radius, sf.zero if c is None else c)
    power = identity(sf, n)
    for m in range(1, n + 1):
        mu = sf.add(mu, sf.root(to_scalar(q_conj.mul(power).mul(p)), m + 1))
        power = power.mul(a)

    mu_inv = sf.inverse(mu)
    star = kleene_star(a.scale(mu_inv))
    lower = p.scale(mu_inv)
    upper = q_conj.mul(star).conj().scale(mu)
    logger.debug("rayleigh_affine: mu=%s", mu)
    return OptimumReport(
        value=mu,
        solution_set=GeneratedInterval(star, lower, upper),
        witness=star.mul(witness_argument(lower, upper)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def rayleigh_full(
    a: TropMatrix,
    b: TropMatrix,
    c_mat: TropMatrix,
    g: TropVector,
    h: TropVector,
    *,
    max_dim: int = MAX_COMPOSITION_DIM,
) -> OptimumReport:
    """Minimize ``x^- Ax`` subject to ``Bx + g <= x`` and ``Cx <= h``.

    ``theta`` is the sum over ``k = 1..n`` and compositions
    ``i0 + ... + ik <= n - k`` of
    ``tr^(1/k)(B^i0 A B^i1 ... A B^ik (I + g h^- C))``; the minimizers are
    ``S u`` with ``S = (theta^-1 A + B)*`` and ``g <= u <= (h^- C S)^-``.
    """
    sf = a.sf
    checks = Checks()
    radius = checks.radius(a)
    n = a.rows
    checks.square(b, "B", n)
    checks.vector(g, "g", n)
    checks.vector(h, "h", c_mat.rows)
    if c_mat.cols != n:
        raise ShapeMismatch("shape", f"C must have {n} columns, got {c_mat.cols}")
    b_star = checks.star(b, "B")
    checks.regular(h, "h")
    hc = h.conj().mul(c_mat)
    bounded = not c_mat.is_zero
    if bounded:
        checks.column_regular(c_mat, "C")
        checks.at_most_one(to_scalar(hc.mul(b_star).mul(g)), "h^-CB*g", sf)
    else:
        checks.note("C = 0")
    checks.dimension(n, max_dim)

    closing = identity(sf, n).add(g.mul(hc))
    b_powers = _powers(b, n - 1)
    theta = radius
    for k in range(1, n + 1):
        for total in range(n - k + 1):
            for parts in compositions(total, k + 1):
                product = b_powers[parts[0]]
                for i in parts[1:]:
                    product = product.mul(a).mul(b_powers[i])
                theta = sf.add(theta, sf.root(trace(product.mul(closing)), k))

    star = kleene_star(a.scale(sf.inverse(theta)).add(b))
    logger.debug("rayleigh_full: theta=%s", theta)
    if not bounded:
        # Cx <= h is vacuous for C = 0
        return OptimumReport(
            value=theta,
            solution_set=GeneratedCone(star, g),
            witness=star.mul(witness_argument(g)),
            sense=Sense.MINIMIZE,
            diagnostics=checks.diagnostics,
        )
    upper = hc.mul(star).conj()
    return OptimumReport(
        value=theta,
        solution_set=GeneratedInterval(star, g, upper),
        witness=star.mul(witness_argument(g, upper)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def rayleigh_ineq(
    a: TropMatrix,
    b: TropMatrix,
    g: TropVector | None = None,
    *,
    max_dim: int = MAX_COMPOSITION_DIM,
) -> OptimumReport:
    """Minimize ``x^- Ax`` subject to ``Bx + g <= x``.

    The minimizers are ``(theta^-1 A + B)* u`` for regular ``u >= g``.
    """
    checks = Checks()
    theta, star = _ineq_closure(checks, a, b, max_dim)
    lower = zeros(a.sf, a.rows) if g is None else g
    checks.vector(lower, "g", a.rows)
    logger.debug("rayleigh_ineq: theta=%s", theta)
    return OptimumReport(
        value=theta,
        solution_set=GeneratedCone(star, lower),
        witness=star.mul(witness_argument(lower)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def rayleigh_box(a: TropMatrix, g: TropVector, h: TropVector) -> OptimumReport:
    """Minimize ``x^- Ax`` subject to ``g <= x <= h``.

    ``theta = lambda + sum_k (h^- A^k g)^(1/k)``; the minimizers are ``S u``
    with ``S = (theta^-1 A)*`` and ``g <= u <= (h^- S)^-``.
    """
    sf = a.sf
    checks = Checks()
    radius = checks.radius(a)
    n = a.rows
    checks.vector(g, "g", n)
    checks.vector(h, "h", n)
    checks.regular(h, "h")
    h_conj = h.conj()
    checks.at_most_one(to_scalar(h_conj.mul(g)), "h^-g", sf)

    theta = radius
    power = a
    for k in range(1, n + 1):
        theta = sf.add(theta, sf.root(to_scalar(h_conj.mul(power).mul(g)), k))
        power = power.mul(a)

    star = kleene_star(a.scale(sf.inverse(theta)))
    upper = h_conj.mul(star).conj()
    logger.debug("rayleigh_box: theta=%s", theta)
    return OptimumReport(
        value=theta,
        solution_set=GeneratedInterval(star, g, upper),
        witness=star.mul(witness_argument(g, upper)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def rayleigh_p_ineq(
    a: TropMatrix,
    b: TropMatrix,
    p: TropVector,
    g: TropVector | None = None,
    *,
    max_dim: int = MAX_COMPOSITION_DIM,
) -> OptimumReport:
    """Minimize ``x^- Ax + x^- p`` subject to ``Bx + g <= x``.

    The minimum equals the one without the ``x^- p`` term; the minimizers are
    ``(theta^-1 A + B)* u`` for regular ``u >= theta^-1 p + g``.
    """
    sf = a.sf
    checks = Checks()
    theta, star = _ineq_closure(checks, a, b, max_dim)
    checks.vector(p, "p", a.rows)
    g = zeros(sf, a.rows) if g is None else g
    checks.vector(g, "g", a.rows)
    lower = p.scale(sf.inverse(theta)).add(g)
    logger.debug("rayleigh_p_ineq: theta=%s", theta)
    return OptimumReport(
        value=theta,
        solution_set=GeneratedCone(star, lower),
        witness=star.mul(witness_argument(lower)),
        sense=Sense.MINIMIZE,
        diagnostics=checks.diagnostics,
    )


def _ineq_closure(
    checks: Checks, a: TropMatrix, b: TropMatrix, max_dim: int
) -> tuple[Scalar, TropMatrix]:
    """``theta`` for ``Bx <= x`` constraints and the generator ``(theta^-1 A + B)*``."""
    sf = a.sf
    radius = checks.radius(a)
    n = a.rows
    checks.square(b, "B", n)
    checks.star(b, "B")
    checks.dimension(n, max_dim)

    b_powers = _powers(b, n - 1)
    theta = radius
    for k in range(1, n):
        for total in range(1, n - k + 1):
            for parts in compositions(total, k):
                product = identity(sf, n)
                for i in parts:
                    product = product.mul(a).mul(b_powers[i])
                theta = sf.add(theta, sf.root(trace(product), k))
    star = kleene_star(a.scale(sf.inverse(theta)).add(b))
    return theta, star


def _powers(b: TropMatrix, top: int) -> list[TropMatrix]:
    """``[I, B, ..., B^top]``."""
    powers = [identity(b.sf, b.rows)]
    for _ in range(top):
        powers.append(powers[-1].mul(b))
    return powers
