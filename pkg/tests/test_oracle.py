"""Tests for tropopt.oracle."""

import random
from dataclasses import replace
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from tests.strategies import random_instances
from tropopt.errors import (
    EmptyFeasibleGrid,
    NotRegular,
    PreconditionError,
    VerificationFailure,
)
from tropopt.forms import ProblemForm
from tropopt.model import GeneratedCone, Interval, PinnedScaledBox, ProblemInstance
from tropopt.oracle import (
    GridSpec,
    check_feasible,
    check_solution_set,
    contains,
    default_grid,
    evaluate_objective,
    grid_optimize,
    objective_by_loops,
    sample_solution_set,
)
from tropopt.semifield import MAX_PLUS, MAX_TIMES, MIN_PLUS
from tropopt.solvers import solve
from tropopt.tropalg import TropMatrix, identity


def s(v):
    return MAX_PLUS.scalar(v)


def mat(rows):
    return TropMatrix.from_rows(MAX_PLUS, rows)


def vec(values):
    return TropMatrix.column(MAX_PLUS, values)


def instance(form, **data):
    return ProblemInstance(MAX_PLUS, form, data)


P4 = instance(ProblemForm.CHEBY_BOX, p=vec([4]), q=vec([0]), g=vec([0]), h=vec([10]))
P3 = instance(ProblemForm.RAYLEIGH, A=mat([[1, 3], [0, 2]]))


def test_evaluate_objective_examples():
    assert evaluate_objective(P4, vec([2])) == s(2)
    assert evaluate_objective(P3, vec([0, -2])) == s(2)
    with pytest.raises(NotRegular):
        evaluate_objective(P3, vec([0, None]))


def test_objective_evaluations_agree():
    span = instance(
        ProblemForm.SPAN_MAX,
        A=mat([[0, 1], [2, 0]]),
        B=mat([[1, 0], [0, 3]]),
        p=vec([0, 1]),
        q=vec([0, 0]),
    )
    for x in (vec([0, 0]), vec([1, -2]), vec([Fraction(1, 2), 3])):
        assert evaluate_objective(span, x) == objective_by_loops(span, x)
        assert evaluate_objective(P3, x) == objective_by_loops(P3, x)


def test_check_feasible():
    full = instance(
        ProblemForm.RAYLEIGH_FULL,
        A=mat([[1]]),
        B=mat([[None]]),
        C=mat([[0]]),
        g=vec([0]),
        h=vec([5]),
    )
    assert check_feasible(full, vec([3]))
    assert not check_feasible(full, vec([6]))
    assert not check_feasible(full, vec([-1]))
    assert not check_feasible(P4, vec([11]))
    assert not check_feasible(P4, vec([None]))


def test_grid_axis_and_size():
    grid = GridSpec(lower=(Fraction(0),), upper=(Fraction(10),), step=Fraction(1, 2))
    assert grid.axis(0)[:3] == [0, Fraction(1, 2), 1]
    assert grid.size == 21
    with pytest.raises(ValueError):
        GridSpec(lower=(Fraction(1),), upper=(Fraction(0),), step=Fraction(1))


def test_grid_covering_extends_by_whole_steps():
    grid = GridSpec(lower=(Fraction(0),), upper=(Fraction(2),), step=Fraction(1, 2))
    wider = grid.covering(vec([Fraction(-3, 4)]))
    assert wider.lower == (Fraction(-1),)
    assert wider.upper == (Fraction(2),)


def test_default_grid():
    grid = default_grid(P4)
    # constants 0..10, span 10, step 1/lcm(1, 2)
    assert grid.lower == (Fraction(-10),)
    assert grid.upper == (Fraction(20),)
    assert grid.step == Fraction(1, 2)
    assert default_grid(P3).step == Fraction(1, 6)


def test_grid_optimize_examples():
    grid = GridSpec(lower=(Fraction(0),), upper=(Fraction(10),), step=Fraction(1, 2))
    result = grid_optimize(P4, grid)
    assert result.best_value == s(2)
    assert result.argbest == (vec([2]),)
    assert result.evaluated_count == result.feasible_count == 21

    box = GridSpec(lower=(Fraction(-4),) * 2, upper=(Fraction(4),) * 2, step=Fraction(1, 2))
    assert grid_optimize(P3, box).best_value == s(2)


def test_grid_optimize_empty():
    bad = instance(ProblemForm.CHEBY_BOX, p=vec([4]), q=vec([0]), g=vec([5]), h=vec([1]))
    grid = GridSpec(lower=(Fraction(0),), upper=(Fraction(10),), step=Fraction(1))
    with pytest.raises(EmptyFeasibleGrid):
        grid_optimize(bad, grid)


def test_grid_needs_additive_semifield():
    times = ProblemInstance(
        MAX_TIMES, ProblemForm.RAYLEIGH, {"A": TropMatrix.from_rows(MAX_TIMES, [[2]])}
    )
    grid = GridSpec(lower=(Fraction(0),), upper=(Fraction(1),), step=Fraction(1))
    with pytest.raises(ValueError):
        grid_optimize(times, grid)


def test_samples_lie_in_the_set():
    rng = random.Random(1)
    box = Interval(vec([0, None]), vec([2, 3]))
    for x in sample_solution_set(box, 30, rng):
        assert box.contains(x)
        assert all(not e.is_bottom for e in x.entries)
    cone = GeneratedCone(mat([[0, 1], [-2, 0]]), vec([None, None]))
    for x in sample_solution_set(cone, 10, rng):
        assert contains(cone, x)


def test_pinned_box_samples():
    pinned = PinnedScaledBox(k=0, s=0, pin=s(1), caps=vec([1, 4]))
    for x in sample_solution_set(pinned, 20, random.Random(2)):
        alpha = MAX_PLUS.div(x.at(0), s(1))
        assert MAX_PLUS.leq(x.at(1), MAX_PLUS.mul(alpha, s(4)))


def test_sampling_in_min_plus_respects_its_order():
    box = Interval(
        TropMatrix.column(MIN_PLUS, [5]), TropMatrix.column(MIN_PLUS, [1])
    )
    for x in sample_solution_set(box, 20, random.Random(3)):
        assert box.contains(x)


def test_check_solution_set_passes_on_examples():
    record = check_solution_set(P4, solve(P4), samples=20)
    assert record.oracle.best_value == s(2)
    assert record.samples == 20
    assert check_solution_set(P3, solve(P3), samples=20).oracle.best_value == s(2)


def test_check_solution_set_catches_a_wrong_value():
    report = solve(P4)
    broken = replace(report, value=MAX_PLUS.mul(report.value, s(1)))
    with pytest.raises(VerificationFailure) as info:
        check_solution_set(P4, broken, samples=5)
    assert info.value.condition == "witness value"


def test_check_solution_set_catches_a_set_that_misses_optimizers():
    report = solve(P3)
    # raising the lower bound of the cone drops minimizers such as (-2, -3)
    narrow = replace(
        report,
        solution_set=GeneratedCone(report.solution_set.generator, vec([0, 0])),
    )
    with pytest.raises(VerificationFailure) as info:
        check_solution_set(P3, narrow, samples=5)
    assert info.value.condition == "grid optimizer in set"


def test_contains_checks_generated_intervals():
    report = solve(
        instance(ProblemForm.RAYLEIGH_BOX, A=mat([[1, 3], [0, 2]]), g=vec([0, 0]), h=vec([0, 0]))
    )
    assert contains(report.solution_set, vec([0, 0]))
    assert not contains(report.solution_set, vec([0, -1]))
    assert contains(Interval(vec([0]), vec([1])), vec([1]))
    assert contains(GeneratedCone(identity(MAX_PLUS, 1), vec([0])), vec([3]))


@pytest.mark.parametrize("form", list(ProblemForm), ids=lambda form: form.value)
@given(data=st.data(), seed=st.integers(min_value=0, max_value=1000))
@settings(max_examples=50, deadline=None)
def test_reports_survive_verification(form, data, seed):
    inst = data.draw(random_instances(form))
    try:
        report = solve(inst)
    except PreconditionError:
        return
    n = inst.dim
    # a small box around the origin; the check extends it to reach the witness
    grid = GridSpec((Fraction(-3),) * n, (Fraction(3),) * n, default_grid(inst).step)
    record = check_solution_set(inst, report, samples=5, grid=grid, seed=seed)
    assert record.oracle.best_value == report.value


# -- multiplicative instances --------------------------------------------------

TIMES_P3 = ProblemInstance(
    MAX_TIMES, ProblemForm.RAYLEIGH, {"A": TropMatrix.from_rows(MAX_TIMES, [[2, 8], [1, 4]])}
)


def test_default_grid_of_a_multiplicative_instance_is_in_log_scale():
    grid = default_grid(TIMES_P3)
    # log2 of the entries is 1, 3, 0, 2
    assert grid.lower == (Fraction(-3),) * 2
    assert grid.upper == (Fraction(6),) * 2
    assert grid.step == Fraction(1, 6)


def test_check_solution_set_searches_multiplicative_instances_in_log_scale():
    record = check_solution_set(TIMES_P3, solve(TIMES_P3), samples=5)
    assert MAX_TIMES.eq(record.oracle.best_value, MAX_TIMES.scalar(4))
    assert all(x.sf.id is MAX_TIMES.id for x in record.oracle.argbest)
    assert record.oracle.evaluated_count == 55 * 55
    assert "grid optimum over 3025 points in log scale" in record.checks
    assert "grid optimizers lie in the reported set" in record.checks


def test_check_solution_set_catches_a_wrong_multiplicative_optimum():
    # x = (1, 1) attains 8, but the minimum is 4
    x = TropMatrix.column(MAX_TIMES, [1, 1])
    wrong = replace(
        solve(TIMES_P3),
        value=MAX_TIMES.scalar(8),
        solution_set=Interval(x, x),
        witness=x,
        complete=False,
    )
    with pytest.raises(VerificationFailure) as info:
        check_solution_set(TIMES_P3, wrong, samples=5)
    assert info.value.condition == "grid optimum"
