"""Brute-force checks of solver reports.

Everything here is independent of the closed-form solvers: objectives and
constraints are evaluated literally from the instance data, optima are found
by exhaustive search over a rational grid, and reported solution sets are
sampled and checked point by point.

Grid search runs in the additive semifields, where values are exact
rationals. Multiplicative instances are carried to max-plus or min-plus by
:func:`tropopt.duality.logarithm` and searched there, in the log scale.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction

import networkx as nx

from tropopt.duality import logarithm
from tropopt.errors import EmptyFeasibleGrid, NotRegular, ShapeMismatch, VerificationFailure
from tropopt.forms import ProblemForm, Sense
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
from tropopt.semifield import BOTTOM, Scalar, Semifield
from tropopt.tropalg import (
    TropMatrix,
    TropVector,
    is_regular,
    norm,
    ones,
    require_square,
    to_scalar,
)

logger = logging.getLogger(__name__)

_SAMPLE_DENOMINATOR = 12

_RAYLEIGH_FORMS = (
    ProblemForm.RAYLEIGH,
    ProblemForm.RAYLEIGH_FULL,
    ProblemForm.RAYLEIGH_INEQ,
    ProblemForm.RAYLEIGH_BOX,
)
_CHEBY_FORMS = (ProblemForm.CHEBY_BOX, ProblemForm.CHEBY_INEQ_BOX, ProblemForm.CHEBY_INEQ)
_SPAN_FORMS = (
    ProblemForm.SPAN_MIN,
    ProblemForm.SPAN_MAX,
    ProblemForm.SPAN_MAX_INEQ,
    ProblemForm.SPAN_MAX_EQ,
)
_ORDER_FORMS = (
    ProblemForm.CHEBY_INEQ,
    ProblemForm.RAYLEIGH_INEQ,
    ProblemForm.RAYLEIGH_P_INEQ,
)


@dataclass(frozen=True)
class GridSpec:
    """The lattice ``lower + k step`` inside the box ``[lower, upper]``.

    Bounds are plain rationals; they are converted into the instance
    semifield when points are generated.
    """

    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    step: Fraction

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise ShapeMismatch("shape", "grid bounds have different lengths")
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("grid lower bound exceeds upper bound")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def axis(self, i: int) -> list[Fraction]:
        count = math.floor((self.upper[i] - self.lower[i]) / self.step)
        return [self.lower[i] + k * self.step for k in range(count + 1)]

    @property
    def size(self) -> int:
        return math.prod(len(self.axis(i)) for i in range(self.dim))

    def covering(self, x: TropVector) -> GridSpec:
        """The grid extended by whole steps until its box contains ``x``."""
        lower = list(self.lower)
        upper = list(self.upper)
        for i, entry in enumerate(x.entries):
            if entry.is_bottom:
                continue
            value = Fraction(entry.value)
            if value < lower[i]:
                lower[i] -= math.ceil((lower[i] - value) / self.step) * self.step
            if value > upper[i]:
                upper[i] += math.ceil((value - upper[i]) / self.step) * self.step
        return replace(self, lower=tuple(lower), upper=tuple(upper))

    def points(self, sf: Semifield):
        axes = [[sf.scalar(v) for v in self.axis(i)] for i in range(self.dim)]
        for combo in itertools.product(*axes):
            yield TropMatrix(sf, self.dim, 1, tuple(combo))


@dataclass(frozen=True)
class OracleReport:
    """Best grid value, every grid point attaining it, and search statistics."""

    best_value: Scalar
    argbest: tuple[TropVector, ...]
    evaluated_count: int
    feasible_count: int


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of :func:`check_solution_set`; failures raise instead."""

    checks: tuple[str, ...]
    samples: int
    oracle: OracleReport


# -- objectives and constraints ----------------------------------------------


def evaluate_objective(instance: ProblemInstance, x: TropVector) -> Scalar:
    """The objective of ``instance`` at the regular point ``x``."""
    _check_point(instance, x)
    if not is_regular(x):
        raise NotRegular("x not regular", "objectives are evaluated at regular points")
    sf = instance.sf
    m = instance.optional_matrix
    form = instance.form
    x_conj = x.conj()

    if form in _RAYLEIGH_FORMS:
        return to_scalar(x_conj.mul(m("A")).mul(x))
    if form in _CHEBY_FORMS:
        return sf.add(to_scalar(m("q").conj().mul(x)), to_scalar(x_conj.mul(m("p"))))
    if form is ProblemForm.CHEBY_LOWER:
        ax = m("A").mul(x)
        return sf.add(to_scalar(m("q").conj().mul(ax)), to_scalar(ax.conj().mul(m("p"))))
    if form in _SPAN_FORMS:
        upper = to_scalar(m("q").conj().mul(m("B")).mul(x))
        return sf.mul(upper, to_scalar(m("A").mul(x).conj().mul(m("p"))))
    if form is ProblemForm.SPAN_MIN_EQINEQ:
        y = m("C").mul(x)
        return sf.mul(norm(y), to_scalar(y.conj().mul(ones(sf, y.rows))))
    if form is ProblemForm.RAYLEIGH_AFFINE:
        c = instance.scalar("c") or BOTTOM
        terms = (
            to_scalar(x_conj.mul(m("A")).mul(x)),
            to_scalar(x_conj.mul(m("p"))),
            to_scalar(m("q").conj().mul(x)),
            c,
        )
        return sf.sum(terms)
    if form is ProblemForm.RAYLEIGH_P_INEQ:
        return sf.add(to_scalar(x_conj.mul(m("A")).mul(x)), to_scalar(x_conj.mul(m("p"))))
    if form is ProblemForm.CHEBY_UNDER:
        return to_scalar(m("A").mul(x).conj().mul(m("p")))
    if form is ProblemForm.CHEBY_OVER:
        return to_scalar(m("p").conj().mul(m("A")).mul(x))
    raise ValueError(f"no objective for {form!r}")


def objective_by_loops(instance: ProblemInstance, x: TropVector) -> Scalar:
    """Second evaluation of the objective written with explicit scalar loops."""
    _check_point(instance, x)
    sf = instance.sf
    xs = list(x.entries)

    def mat(name: str) -> list[list[Scalar]]:
        return instance.matrix(name).to_rows()

    def vec(name: str) -> list[Scalar]:
        return list(instance.matrix(name).entries)

    def apply(rows: list[list[Scalar]], v: list[Scalar]) -> list[Scalar]:
        return [sf.sum(sf.mul(a, b) for a, b in zip(row, v)) for row in rows]

    def under(u: list[Scalar], v: list[Scalar]) -> Scalar:
        # u^- v
        return sf.sum(sf.div(vi, ui) for ui, vi in zip(u, v) if not ui.is_bottom)

    form = instance.form
    if form in _RAYLEIGH_FORMS:
        return under(xs, apply(mat("A"), xs))
    if form in _CHEBY_FORMS:
        return sf.add(under(vec("q"), xs), under(xs, vec("p")))
    if form is ProblemForm.CHEBY_LOWER:
        ax = apply(mat("A"), xs)
        return sf.add(under(vec("q"), ax), under(ax, vec("p")))
    if form in _SPAN_FORMS:
        return sf.mul(
            under(vec("q"), apply(mat("B"), xs)), under(apply(mat("A"), xs), vec("p"))
        )
    if form is ProblemForm.SPAN_MIN_EQINEQ:
        y = apply(mat("C"), xs)
        return sf.mul(sf.sum(y), under(y, [sf.one] * len(y)))
    if form is ProblemForm.RAYLEIGH_AFFINE:
        return sf.sum(
            (
                under(xs, apply(mat("A"), xs)),
                under(xs, vec("p")),
                under(vec("q"), xs),
                instance.scalar("c") or BOTTOM,
            )
        )
    if form is ProblemForm.RAYLEIGH_P_INEQ:
        return sf.add(under(xs, apply(mat("A"), xs)), under(xs, vec("p")))
    if form is ProblemForm.CHEBY_UNDER:
        return under(apply(mat("A"), xs), vec("p"))
    if form is ProblemForm.CHEBY_OVER:
        return under(vec("p"), apply(mat("A"), xs))
    raise ValueError(f"no objective for {form!r}")


def check_feasible(instance: ProblemInstance, x: TropVector) -> bool:
    """Whether the regular point ``x`` satisfies every constraint of ``instance``."""
    _check_point(instance, x)
    if not is_regular(x):
        return False
    m = instance.optional_matrix
    form = instance.form

    def closed(b: TropMatrix | None, g: TropVector | None) -> bool:
        # Bx + g <= x
        lhs = b.mul(x)
        if g is not None:
            lhs = lhs.add(g)
        return lhs.leq(x)

    if form in (ProblemForm.CHEBY_BOX, ProblemForm.RAYLEIGH_BOX):
        return m("g").leq(x) and x.leq(m("h"))
    if form is ProblemForm.CHEBY_LOWER:
        return m("g") is None or m("g").leq(x)
    if form is ProblemForm.CHEBY_INEQ_BOX:
        return closed(m("B"), m("g")) and x.leq(m("h"))
    if form in _ORDER_FORMS:
        return closed(m("B"), m("g"))
    if form is ProblemForm.SPAN_MIN_EQINEQ:
        return closed(m("D"), None)
    if form is ProblemForm.SPAN_MAX_INEQ:
        return closed(m("C"), None)
    if form is ProblemForm.SPAN_MAX_EQ:
        return m("C").mul(x).equals(x)
    if form is ProblemForm.RAYLEIGH_FULL:
        return closed(m("B"), m("g")) and m("C").mul(x).leq(m("h"))
    if form is ProblemForm.CHEBY_UNDER:
        return m("A").mul(x).leq(m("p"))
    if form is ProblemForm.CHEBY_OVER:
        return m("p").leq(m("A").mul(x))
    return True


def _check_point(instance: ProblemInstance, x: TropVector) -> None:
    n = instance.dim
    if x.shape != (n, 1):
        raise ShapeMismatch("shape", f"x must be a vector of length {n}, got {x.shape}")
    if x.sf.id is not instance.sf.id:
        raise ShapeMismatch("semifield", "x is over a different semifield")


# -- grid search ---------------------------------------------------------------


def default_grid(instance: ProblemInstance, include: TropVector | None = None) -> GridSpec:
    """The box ``[c_min - span, c_max + span]^n`` with step ``1/lcm(1..n+1)``.

    ``c_min`` and ``c_max`` are the extreme finite constants of the instance
    and ``span = max(c_max - c_min, 1)``. With ``include`` the box is
    extended to contain that point. For a multiplicative instance the grid
    is that of its image under :func:`~tropopt.duality.logarithm`.
    """
    if not instance.sf.id.is_additive:
        transport = logarithm(instance.sf, exact=False)
        instance = transport.instance(instance)
        include = None if include is None else transport.matrix(include)
    constants = [
        Fraction(entry.value)
        for datum in instance.data.values()
        for entry in (datum.entries if isinstance(datum, TropMatrix) else (datum,))
        if not entry.is_bottom
    ] or [Fraction(0)]
    low, high = min(constants), max(constants)
    span = max(high - low, Fraction(1))
    n = instance.dim
    grid = GridSpec(
        lower=(low - span,) * n,
        upper=(high + span,) * n,
        step=Fraction(1, math.lcm(*range(1, n + 2))),
    )
    return grid if include is None else grid.covering(include)


def grid_optimize(instance: ProblemInstance, grid: GridSpec) -> OracleReport:
    """Best objective value over the feasible grid points, by exhaustive search."""
    sf = instance.sf
    _require_additive(sf)
    if grid.dim != instance.dim:
        raise ShapeMismatch("shape", f"grid has {grid.dim} coordinates, x has {instance.dim}")
    maximize = instance.form.sense is Sense.MAXIMIZE
    best: Scalar | None = None
    argbest: list[TropVector] = []
    evaluated = feasible = 0
    for point in grid.points(sf):
        evaluated += 1
        if not check_feasible(instance, point):
            continue
        feasible += 1
        value = evaluate_objective(instance, point)
        if best is None or (sf.lt(best, value) if maximize else sf.lt(value, best)):
            best = value
            argbest = [point]
        elif sf.eq(value, best):
            argbest.append(point)
    logger.debug("grid search: %d points, %d feasible, best=%s", evaluated, feasible, best)
    if best is None:
        raise EmptyFeasibleGrid(
            "no feasible grid point", f"none of {evaluated} grid points is feasible"
        )
    return OracleReport(
        best_value=best,
        argbest=tuple(argbest),
        evaluated_count=evaluated,
        feasible_count=feasible,
    )


def _require_additive(sf: Semifield) -> None:
    if not sf.id.is_additive:
        raise ValueError(
            f"grid search needs max-plus or min-plus, not {sf.id.value}; "
            "map the instance with duality.logarithm first"
        )


# -- solution-set sampling -----------------------------------------------------


def sample_solution_set(
    solution_set: SolutionSet, count: int, rng: random.Random, width: Fraction = Fraction(2)
) -> list[TropVector]:
    """``count`` random elements of ``solution_set``.

    Unbounded directions are sampled within ``width`` (in the ``log`` scale
    of the semifield) of the nearest finite bound.
    """
    return [_sample(solution_set, rng, width) for _ in range(count)]


def _sample(solution_set: SolutionSet, rng: random.Random, width: Fraction) -> TropVector:
    if isinstance(solution_set, Interval):
        sf = solution_set.lower.sf
        entries = [
            _between(sf, lo, hi, rng, width)
            for lo, hi in zip(solution_set.lower.entries, solution_set.upper.entries)
        ]
        return TropMatrix(sf, len(entries), 1, tuple(entries))
    if isinstance(solution_set, GeneratedInterval):
        sf = solution_set.generator.sf
        entries = [
            _between(sf, lo, hi, rng, width)
            for lo, hi in zip(solution_set.u_lower.entries, solution_set.u_upper.entries)
        ]
        return solution_set.point(TropMatrix(sf, len(entries), 1, tuple(entries)))
    if isinstance(solution_set, GeneratedCone):
        sf = solution_set.generator.sf
        entries = [_between(sf, lo, None, rng, width) for lo in solution_set.u_lower.entries]
        return solution_set.point(TropMatrix(sf, len(entries), 1, tuple(entries)))
    if isinstance(solution_set, PinnedScaledBox):
        sf = solution_set.caps.sf
        alpha = _between(sf, BOTTOM, None, rng, width)
        entries = [
            sf.mul(alpha, solution_set.pin)
            if j == solution_set.k
            else _between(sf, BOTTOM, sf.mul(alpha, cap), rng, width)
            for j, cap in enumerate(solution_set.caps.entries)
        ]
        return TropMatrix(sf, len(entries), 1, tuple(entries))
    if isinstance(solution_set, Substituted):
        return solution_set.outer.mul(_sample(solution_set.inner, rng, width))
    raise TypeError(f"unknown solution set {type(solution_set).__name__}")


def _lift(sf: Semifield, t: Fraction) -> Scalar:
    """An element ``t`` units above one in the order of ``sf``."""
    signed = t if sf.id.is_max else -t
    if sf.id.is_additive:
        return sf.scalar(signed)
    return sf.scalar(2.0 ** float(signed))


def _between(
    sf: Semifield, lo: Scalar, hi: Scalar | None, rng: random.Random, width: Fraction
) -> Scalar:
    """A random element of ``[lo, hi]``; a zero ``lo`` is replaced by ``hi`` less ``width``."""
    r = Fraction(rng.randint(0, _SAMPLE_DENOMINATOR), _SAMPLE_DENOMINATOR)
    if lo.is_bottom:
        lo = sf.div(hi if hi is not None else sf.one, _lift(sf, width))
    if hi is None:
        return sf.mul(lo, _lift(sf, r * width))
    gap = sf.div(hi, lo)
    return sf.mul(lo, sf.power(gap, r.numerator, r.denominator))


# -- verification --------------------------------------------------------------


def check_solution_set(
    instance: ProblemInstance,
    report: OptimumReport,
    samples: int = 50,
    grid: GridSpec | None = None,
    seed: int = 0,
) -> VerificationRecord:
    """Check ``report`` against ``instance`` without trusting the solver.

    The witness and ``samples`` random elements of the reported set must be
    feasible and attain the reported value. For additive semifields the grid
    optimum must equal the reported value and, when the set is complete,
    every grid optimizer must belong to it.

    A multiplicative instance is searched on the grid of its logarithm, and
    ``grid`` is read in that log scale. Optimizers of such an instance need
    not lie on the lattice, so there the grid optimum only has to not beat
    the reported value; the membership check runs when it equals it. The
    returned oracle report is mapped back to the instance semifield.

    :raises VerificationFailure: naming the first check that failed.
    """
    sf = instance.sf
    checks: list[str] = []
    _check_point_value(instance, report, report.witness, "witness")
    checks.append("witness attains the reported value")

    rng = random.Random(seed)
    for index, point in enumerate(sample_solution_set(report.solution_set, samples, rng)):
        _check_point_value(instance, report, point, f"sample {index}")
    checks.append(f"{samples} samples attain the reported value")

    if sf.id.is_additive:
        oracle = _check_grid(instance, report, grid, checks, exact=True)
    else:
        transport = logarithm(sf, exact=False)
        mapped = _check_grid(
            transport.instance(instance), transport.report(report), grid, checks, exact=False
        )
        back = transport.inverse()
        oracle = replace(
            mapped,
            best_value=back.scalar(mapped.best_value),
            argbest=tuple(back.matrix(x) for x in mapped.argbest),
        )
    logger.debug("verified %s: %s", instance.form.value, "; ".join(checks))
    return VerificationRecord(checks=tuple(checks), samples=samples, oracle=oracle)


def _check_grid(
    instance: ProblemInstance,
    report: OptimumReport,
    grid: GridSpec | None,
    checks: list[str],
    exact: bool,
) -> OracleReport:
    """Compare the grid optimum of an additive ``instance`` with ``report``."""
    sf = instance.sf
    grid = (grid or default_grid(instance)).covering(report.witness)
    try:
        oracle = grid_optimize(instance, grid)
    except EmptyFeasibleGrid as exc:
        raise VerificationFailure("grid optimum", str(exc)) from exc
    best = oracle.best_value
    attained = sf.eq(best, report.value)
    if instance.form.sense is Sense.MAXIMIZE:
        beaten = sf.lt(report.value, best)
    else:
        beaten = sf.lt(best, report.value)
    if beaten or (exact and not attained):
        raise VerificationFailure(
            "grid optimum", f"grid optimum {best} differs from reported value {report.value}"
        )
    scale = "" if exact else " in log scale"
    checks.append(f"grid optimum over {oracle.evaluated_count} points{scale}")
    if report.complete and attained:
        for point in oracle.argbest:
            if not contains(report.solution_set, point):
                raise VerificationFailure(
                    "grid optimizer in set",
                    f"grid optimizer {_fmt(point)} lies outside the reported set",
                )
        checks.append("grid optimizers lie in the reported set")
    return oracle


def contains(solution_set: SolutionSet, x: TropVector) -> bool:
    """Membership for interval sets and sets generated by a square star-closure.

    ``x`` is generated by a Kleene star ``G`` exactly when ``Gx = x``, in which
    case ``x`` itself is a valid argument. Other set kinds are not tested.
    """
    if isinstance(solution_set, Interval):
        return solution_set.contains(x)
    if isinstance(solution_set, GeneratedInterval):
        gen = solution_set.generator
        return (
            gen.mul(x).equals(x)
            and solution_set.u_lower.leq(x)
            and x.leq(solution_set.u_upper)
        )
    if isinstance(solution_set, GeneratedCone) and solution_set.generator.is_square:
        return solution_set.generator.mul(x).equals(x) and solution_set.u_lower.leq(x)
    return True


def _check_point_value(
    instance: ProblemInstance, report: OptimumReport, x: TropVector, label: str
) -> None:
    sf = instance.sf
    if not is_regular(x):
        raise VerificationFailure(f"{label} regular", f"{label} {_fmt(x)} is not regular")
    if not check_feasible(instance, x):
        raise VerificationFailure(f"{label} feasible", f"{label} {_fmt(x)} is infeasible")
    value = evaluate_objective(instance, x)
    if not sf.eq(value, report.value):
        raise VerificationFailure(
            f"{label} value",
            f"{label} {_fmt(x)} has objective {value}, reported {report.value}",
        )
    if not sf.eq(objective_by_loops(instance, x), value):
        raise VerificationFailure(f"{label} evaluation", "objective evaluations disagree")


def _fmt(x: TropVector) -> str:
    return "(" + ", ".join(str(e) for e in x.entries) + ")"


# -- spectral radius by cycles -------------------------------------------------


def max_cycle_mean(a: TropMatrix) -> Scalar:
    """Sum over all simple cycles of ``(cycle weight)^(1/length)``.

    Enumerates cycles of the graph of ``A`` with :func:`networkx.simple_cycles`,
    so it is only practical for small ``n``.
    """
    n = require_square(a)
    sf = a.sf
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(
        (i, j) for i in range(n) for j in range(n) if not a[i, j].is_bottom
    )
    best = BOTTOM
    for cycle in nx.simple_cycles(graph):
        steps = zip(cycle, cycle[1:] + cycle[:1])
        weight = sf.prod(a[i, j] for i, j in steps)
        best = sf.add(best, sf.root(weight, len(cycle)))
    return best
