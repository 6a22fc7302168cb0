"""Tests for the closed-form solvers in tropopt.solvers."""

from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from tropopt.errors import (
    BoundsInverted,
    DimensionTooLarge,
    Infeasible,
    NotRegular,
    ZeroSpectralRadius,
)
from tropopt.forms import ProblemForm, Sense
from tropopt.model import (
    GeneratedCone,
    GeneratedInterval,
    Interval,
    PinnedScaledBox,
    ProblemInstance,
    Substituted,
)
from tropopt.oracle import check_feasible, evaluate_objective
from tropopt.semifield import MAX_PLUS
from tropopt.solvers import (
    cheby_approx,
    cheby_box,
    cheby_ineq,
    cheby_lower,
    cheby_over,
    cheby_under,
    compositions,
    rayleigh,
    rayleigh_affine,
    rayleigh_box,
    rayleigh_full,
    rayleigh_ineq,
    rayleigh_p_ineq,
    solve,
    span_max,
    span_max_constrained,
    span_max_norm,
    span_min,
    span_min_constrained,
    span_min_seminorm,
)
from tropopt.tropalg import TropMatrix, identity, ones, zeros

small = st.integers(min_value=-4, max_value=4)


def s(v):
    return MAX_PLUS.scalar(v)


def mat(rows):
    return TropMatrix.from_rows(MAX_PLUS, rows)


def vec(values):
    return TropMatrix.column(MAX_PLUS, values)


def zero_matrix(n):
    return zeros(MAX_PLUS, n, n)


A2 = mat([[1, 3], [0, 2]])


@st.composite
def vectors(draw, n):
    return vec([draw(small) for _ in range(n)])


@st.composite
def finite_matrices(draw, rows, cols):
    return mat([[draw(small) for _ in range(cols)] for _ in range(rows)])


# -- Chebyshev problems --------------------------------------------------------


def test_cheby_box_example():
    report = cheby_box(vec([4]), vec([0]), vec([0]), vec([10]))
    assert report.value == s(2)
    assert report.solution_set == Interval(vec([2]), vec([2]))
    assert report.witness == vec([2])
    assert report.sense is Sense.MINIMIZE
    assert report.complete
    assert report.diagnostics == ("p regular", "q regular", "g <= h", "h regular")


def test_cheby_box_with_point_box():
    g = vec([1, 3])
    report = cheby_box(vec([4, 4]), vec([0, 0]), g, g)
    # (q^-p)^(1/2) = 2, q^-g = 3, g^-p = 3
    assert report.value == s(3)
    assert report.solution_set == Interval(g, g)


def test_cheby_box_rejects_inverted_bounds():
    with pytest.raises(BoundsInverted) as info:
        cheby_box(vec([4]), vec([0]), vec([5]), vec([1]))
    assert info.value.condition == "not g <= h"


def test_cheby_box_needs_regular_p():
    with pytest.raises(NotRegular) as info:
        cheby_box(vec([4, None]), vec([0, 0]), vec([0, 0]), vec([1, 1]))
    assert info.value.condition == "p not regular"


def test_cheby_lower_example():
    report = cheby_lower(mat([[0]]), vec([4]), vec([0]), vec([-10]))
    assert report.value == s(2)
    assert report.witness == vec([2])
    assert report.solution_set == Interval(vec([2]), vec([2]))
    assert not report.complete


def test_cheby_lower_needs_regular_matrix():
    with pytest.raises(NotRegular) as info:
        cheby_lower(mat([[0], [None]]), vec([0, 0]), vec([0, 0]))
    assert info.value.condition == "A not regular"


def test_cheby_ineq_reduces_to_cheby_box():
    p, q, g, h = vec([4]), vec([0]), vec([0]), vec([10])
    report = cheby_ineq(zero_matrix(1), p, q, g, h)
    box = cheby_box(p, q, g, h)
    assert report.value == box.value == s(2)
    assert report.solution_set == GeneratedInterval(identity(MAX_PLUS, 1), vec([2]), vec([2]))


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_cheby_ineq_with_zero_b_matches_cheby_box(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    p, q, g = (data.draw(vectors(n)) for _ in range(3))
    h = g.add(data.draw(vectors(n)))
    box = cheby_box(p, q, g, h)
    report = cheby_ineq(zero_matrix(n), p, q, g, h)
    assert report.value == box.value
    assert report.solution_set == GeneratedInterval(
        identity(MAX_PLUS, n), box.solution_set.lower, box.solution_set.upper
    )


def test_cheby_ineq_without_bounds():
    report = cheby_ineq(zero_matrix(1), vec([4]), vec([0]))
    assert report.value == s(2)
    assert report.solution_set.u_lower == vec([2])
    assert report.solution_set.u_upper == vec([2])


def test_cheby_ineq_infeasible_box():
    with pytest.raises(Infeasible) as info:
        cheby_ineq(zero_matrix(1), vec([4]), vec([0]), vec([5]), vec([1]))
    assert info.value.condition == "h^-B*g > 1"


def test_cheby_ineq_diverging_star():
    with pytest.raises(Infeasible) as info:
        cheby_ineq(mat([[1]]), vec([4]), vec([0]))
    assert info.value.condition == "Tr(B) > 1"


def test_cheby_ineq_accepts_partly_zero_p():
    b = mat([[None, -1], [-2, None]])
    report = cheby_ineq(b, vec([3, None]), vec([0, 0]))
    instance = ProblemInstance(
        MAX_PLUS, ProblemForm.CHEBY_INEQ, {"B": b, "p": vec([3, None]), "q": vec([0, 0])}
    )
    assert check_feasible(instance, report.witness)
    assert evaluate_objective(instance, report.witness) == report.value


def test_under_and_over_approximation():
    a = mat([[0], [0]])
    p = vec([0, 2])
    under = cheby_under(a, p)
    over = cheby_over(a, p)
    assert under.value == over.value == s(2)
    assert under.witness == vec([0])
    assert over.witness == vec([2])
    assert a.mul(under.witness).leq(p)
    assert p.leq(a.mul(over.witness))
    # the two-sided problem has the square root of the one-sided optimum
    assert cheby_approx(a, p).value == s(1)


# -- span seminorm problems ----------------------------------------------------


def test_span_min_scalar():
    report = span_min(mat([[0]]), mat([[0]]), vec([1]), vec([0]))
    assert report.value == s(1)
    assert not report.complete


def test_span_min_identity():
    unit = ones(MAX_PLUS, 2)
    report = span_min(identity(MAX_PLUS, 2), identity(MAX_PLUS, 2), unit, unit)
    assert report.value == MAX_PLUS.one


def test_span_min_diagonal():
    d = mat([[0, None], [None, -3]])
    report = span_min_seminorm(d)
    assert report.value == s(0)
    assert report.witness == vec([0, 3])
    assert report.solution_set == GeneratedCone(vec([0, 3]), zeros(MAX_PLUS, 1))


@given(finite_matrices(2, 2), finite_matrices(2, 2), vectors(2), vectors(2), small)
@settings(max_examples=40)
def test_span_min_is_constant_on_the_ray(a, b, p, q, alpha):
    report = span_min(a, b, p, q)
    instance = ProblemInstance(MAX_PLUS, ProblemForm.SPAN_MIN, {"A": a, "B": b, "p": p, "q": q})
    x = report.witness.scale(s(alpha))
    assert evaluate_objective(instance, x) == report.value


def test_span_min_constrained_examples():
    report = span_min_constrained(mat([[0]]), zero_matrix(1))
    assert report.value == MAX_PLUS.one
    with pytest.raises(Infeasible) as info:
        span_min_constrained(mat([[0]]), mat([[1]]))
    assert info.value.condition == "Tr(D) > 1"


@given(st.integers(min_value=1, max_value=3).flatmap(lambda n: finite_matrices(n, n)))
@settings(max_examples=40)
def test_span_min_constrained_without_constraint(c):
    report = span_min_constrained(c, zero_matrix(c.rows))
    assert report.value == span_min_seminorm(c).value


def test_span_max_scalar():
    report = span_max(mat([[2]]), mat([[1]]), vec([3]), vec([0]))
    assert report.value == s(2)
    assert report.sense is Sense.MAXIMIZE
    assert report.solution_set == PinnedScaledBox(k=0, s=0, pin=s(1), caps=vec([1]))


def test_span_max_example():
    a = mat([[0, 0], [0, 0]])
    b = mat([[1, 0], [0, 1]])
    report = span_max_norm(a, b)
    assert report.value == s(1)
    assert report.witness == vec([0, 0])


def test_span_max_needs_finite_a():
    unit = ones(MAX_PLUS, 2)
    with pytest.raises(NotRegular) as info:
        span_max(identity(MAX_PLUS, 2), identity(MAX_PLUS, 2), unit, unit)
    assert info.value.condition == "A has a zero entry"


@given(finite_matrices(2, 3), finite_matrices(2, 3), vectors(2), vectors(2), small)
@settings(max_examples=40)
def test_span_max_scaling_p(a, b, p, q, c):
    report = span_max(a, b, p, q)
    scaled = span_max(a, b, p.scale(s(c)), q)
    assert scaled.value == MAX_PLUS.mul(report.value, s(c))
    assert (scaled.solution_set.k, scaled.solution_set.s) == (
        report.solution_set.k,
        report.solution_set.s,
    )


def test_span_max_breaks_ties_by_smallest_index():
    report = span_max(mat([[0, 0]]), mat([[0, 0]]), vec([0]), vec([0]))
    assert report.solution_set.k == 0
    assert report.solution_set.s == 0


def test_span_max_constrained_specializations():
    a = mat([[0, 1], [2, 0]])
    b = mat([[1, 0], [0, 3]])
    p, q = vec([0, 1]), vec([0, 0])
    plain = span_max(a, b, p, q)
    for kind, c in (("inequality", zero_matrix(2)), ("equality", identity(MAX_PLUS, 2))):
        report = span_max_constrained(a, b, c, p, q, kind)
        assert report.value == plain.value
        assert report.witness == plain.witness
        assert report.solution_set == Substituted(identity(MAX_PLUS, 2), plain.solution_set)


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_span_max_constrained_with_trivial_constraints_is_span_max(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    m = data.draw(st.integers(min_value=1, max_value=3))
    a, b = data.draw(finite_matrices(m, n)), data.draw(finite_matrices(m, n))
    p, q = data.draw(vectors(m)), data.draw(vectors(m))
    plain = span_max(a, b, p, q)
    for kind, c in (("inequality", zero_matrix(n)), ("equality", identity(MAX_PLUS, n))):
        report = span_max_constrained(a, b, c, p, q, kind)
        assert report.value == plain.value
        assert report.witness == plain.witness


def test_span_max_constrained_errors():
    a, b, p, q = mat([[0, 0]]), mat([[0, 0]]), vec([0]), vec([0])
    with pytest.raises(Infeasible) as info:
        span_max_constrained(mat([[0]]), mat([[0]]), mat([[1]]), vec([0]), vec([0]))
    assert info.value.condition == "Tr(C) > 1"
    with pytest.raises(Infeasible) as info:
        span_max_constrained(a, b, mat([[0, None], [None, -1]]), p, q, "equality")
    assert info.value.condition == "Cx = x has no regular solution"
    with pytest.raises(Infeasible) as info:
        span_max_constrained(a, b, mat([[-1, None], [None, -1]]), p, q, "equality")
    assert info.value.condition == "Tr(C) != 1"
    with pytest.raises(NotRegular) as info:
        span_max_constrained(mat([[None, 0]]), b, zero_matrix(2), p, q)
    assert info.value.condition == "A has a zero entry after substitution"


# -- Rayleigh quotient problems -----------------------------------------------


def test_rayleigh_examples():
    assert rayleigh(mat([[5]])).value == s(5)
    report = rayleigh(A2)
    assert report.value == s(2)
    assert report.solution_set == GeneratedCone(mat([[0, 1], [-2, 0]]), zeros(MAX_PLUS, 2))
    instance = ProblemInstance(MAX_PLUS, ProblemForm.RAYLEIGH, {"A": A2})
    assert evaluate_objective(instance, vec([0, -2])) == s(2)
    with pytest.raises(ZeroSpectralRadius):
        rayleigh(zero_matrix(2))


def test_rayleigh_affine_example():
    report = rayleigh_affine(mat([[0]]), vec([4]), vec([0]), s(1))
    assert report.value == s(2)
    assert report.solution_set == GeneratedInterval(mat([[0]]), vec([2]), vec([2]))


def test_rayleigh_affine_constant_dominates():
    report = rayleigh_affine(A2, vec([0, 0]), vec([0, 0]), s(10))
    assert report.value == s(10)


def test_rayleigh_full_example():
    report = rayleigh_full(mat([[1]]), zero_matrix(1), mat([[0]]), vec([0]), vec([5]))
    assert report.value == s(1)
    assert report.solution_set == GeneratedInterval(mat([[0]]), vec([0]), vec([5]))


def test_rayleigh_full_with_box_matches_rayleigh_box():
    g = h = vec([0, 0])
    full = rayleigh_full(A2, zero_matrix(2), identity(MAX_PLUS, 2), g, h)
    box = rayleigh_box(A2, g, h)
    assert full.value == box.value == s(3)
    assert full.solution_set == box.solution_set


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_rayleigh_full_with_identity_bound_matches_rayleigh_box(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    a = data.draw(finite_matrices(n, n))
    g = data.draw(vectors(n))
    h = g.add(data.draw(vectors(n)))
    full = rayleigh_full(a, zero_matrix(n), identity(MAX_PLUS, n), g, h)
    box = rayleigh_box(a, g, h)
    assert full.value == box.value
    assert full.solution_set == box.solution_set


def test_rayleigh_full_without_upper_constraint_matches_rayleigh_ineq():
    b = mat([[None, -1], [-2, None]])
    g = vec([0, 1])
    full = rayleigh_full(A2, b, mat([[None, None]]), g, vec([0]))
    ineq = rayleigh_ineq(A2, b, g)
    assert full.value == ineq.value
    assert full.solution_set == ineq.solution_set
    assert "C = 0" in full.diagnostics


def test_rayleigh_full_infeasible():
    with pytest.raises(Infeasible) as info:
        rayleigh_full(mat([[1]]), zero_matrix(1), mat([[0]]), vec([6]), vec([5]))
    assert info.value.condition == "h^-CB*g > 1"


def test_rayleigh_ineq_without_constraint_is_rayleigh():
    report = rayleigh_ineq(A2, zero_matrix(2))
    assert report.value == rayleigh(A2).value
    assert report.solution_set == rayleigh(A2).solution_set
    with pytest.raises(Infeasible):
        rayleigh_ineq(A2, mat([[1, None], [None, None]]))


def test_rayleigh_ineq_dimension_limit():
    with pytest.raises(DimensionTooLarge) as info:
        rayleigh_ineq(A2, zero_matrix(2), max_dim=1)
    assert info.value.condition == "n > 1"


def test_rayleigh_box_examples():
    assert rayleigh_box(A2, vec([0, 0]), vec([10, 10])).value == s(2)
    report = rayleigh_box(A2, vec([0, 0]), vec([0, 0]))
    assert report.value == s(3)
    assert report.witness == vec([0, 0])
    with pytest.raises(Infeasible) as info:
        rayleigh_box(A2, vec([1, 0]), vec([0, 0]))
    assert info.value.condition == "h^-g > 1"


def test_rayleigh_p_ineq_example():
    report = rayleigh_p_ineq(mat([[1]]), zero_matrix(1), vec([0]), vec([None]))
    assert report.value == s(1)
    assert report.solution_set == GeneratedCone(mat([[0]]), vec([-1]))


def test_rayleigh_p_ineq_with_zero_p_is_rayleigh_ineq():
    b = mat([[None, -1], [-2, None]])
    report = rayleigh_p_ineq(A2, b, zeros(MAX_PLUS, 2))
    assert report.solution_set == rayleigh_ineq(A2, b).solution_set


@given(vectors(2), st.integers(0, 4), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=40)
def test_larger_boxes_never_raise_the_minimum(g, width, shrink, grow):
    h = g.scale(s(width))
    wider_g = g.scale(s(-shrink))
    wider_h = h.scale(s(grow))
    p, q = vec([1, 2]), vec([0, -1])
    assert MAX_PLUS.leq(cheby_box(p, q, wider_g, wider_h).value, cheby_box(p, q, g, h).value)
    assert MAX_PLUS.leq(rayleigh_box(A2, wider_g, wider_h).value, rayleigh_box(A2, g, h).value)


@given(finite_matrices(2, 2), finite_matrices(2, 2), vectors(2), st.integers(0, 4))
@settings(max_examples=40)
def test_constrained_optima_dominate_the_spectral_radius(a, b, g, width):
    lam = rayleigh(a).value
    assert MAX_PLUS.leq(lam, rayleigh_box(a, g, g.scale(s(width))).value)
    # entries of at most -6 keep every cycle of B negative
    assert MAX_PLUS.leq(lam, rayleigh_ineq(a, b.scale(s(-10)), g).value)


def test_compositions():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert len(list(compositions(3, 3))) == 10


def test_solve_dispatches_on_form():
    instance = ProblemInstance(
        MAX_PLUS,
        ProblemForm.CHEBY_BOX,
        {"p": vec([4]), "q": vec([0]), "g": vec([0]), "h": vec([10])},
    )
    assert solve(instance) == cheby_box(vec([4]), vec([0]), vec([0]), vec([10]))
    instance = ProblemInstance(
        MAX_PLUS, ProblemForm.RAYLEIGH_AFFINE, {"A": mat([[0]]), "p": vec([4]), "q": vec([0])}
    )
    assert solve(instance).value == s(2)


def test_exact_results_are_fractions():
    report = rayleigh(mat([[None, 1], [0, None]]))
    assert report.value == s(Fraction(1, 2))
