"""Tests for tropopt.duality."""

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from tests.strategies import random_instances
from tropopt.duality import logarithm, negation
from tropopt.errors import PreconditionError
from tropopt.forms import ProblemForm
from tropopt.model import ProblemInstance
from tropopt.semifield import MAX_PLUS, MAX_TIMES, MIN_PLUS, MIN_TIMES
from tropopt.solvers import solve
from tropopt.tropalg import TropMatrix


def mat(rows, sf=MAX_PLUS):
    return TropMatrix.from_rows(sf, rows)


def vec(values, sf=MAX_PLUS):
    return TropMatrix.column(sf, values)


def test_negation_maps_values_and_zero():
    neg = negation(MAX_PLUS)
    assert neg.target == MIN_PLUS
    assert neg.matrix(mat([[3, None]])) == mat([[-3, None]], MIN_PLUS)
    assert neg.inverse().matrix(mat([[-3, None]], MIN_PLUS)) == mat([[3, None]])


def test_negation_of_max_times_is_reciprocal():
    neg = negation(MAX_TIMES)
    assert neg.target.id is MIN_TIMES.id
    assert neg.scalar(MAX_TIMES.scalar(4)).value == pytest.approx(0.25)


def test_map_rejects_matrices_from_other_semifields():
    with pytest.raises(ValueError):
        negation(MAX_PLUS).matrix(mat([[1]], MIN_PLUS))
    with pytest.raises(ValueError):
        logarithm(MAX_PLUS)


@pytest.mark.parametrize("form", list(ProblemForm), ids=lambda form: form.value)
@given(data=st.data())
@settings(max_examples=50, deadline=None)
def test_solving_commutes_with_negation(form, data):
    inst = data.draw(random_instances(form))
    neg = negation(MAX_PLUS)
    try:
        report = solve(inst)
    except PreconditionError as exc:
        with pytest.raises(PreconditionError) as info:
            solve(neg.instance(inst))
        assert info.value.condition == exc.condition
        return
    expected = neg.report(report)
    actual = solve(neg.instance(inst))
    assert actual.value == expected.value
    assert actual.value.value == -report.value.value
    assert actual.witness == expected.witness
    assert actual.solution_set == expected.solution_set
    assert actual.sense is expected.sense


def test_logarithm_takes_max_times_to_max_plus():
    a = mat([[2, 8], [1, 4]], MAX_TIMES)
    log = logarithm(MAX_TIMES)
    mapped = log.instance(ProblemInstance(MAX_TIMES, ProblemForm.RAYLEIGH, {"A": a}))
    assert mapped.matrix("A") == mat([[1, 3], [0, 2]])
    report = solve(mapped)
    assert report.value == MAX_PLUS.scalar(2)
    assert report.witness == vec([1, 0])


def test_exp2_maps_reports_back():
    a = mat([[2, 8], [1, 4]], MAX_TIMES)
    inst = ProblemInstance(MAX_TIMES, ProblemForm.RAYLEIGH, {"A": a})
    log = logarithm(MAX_TIMES)
    back = log.inverse().report(solve(log.instance(inst)))
    direct = solve(inst)
    assert back.value.value == pytest.approx(direct.value.value)
    assert [e.value for e in back.witness.entries] == pytest.approx(
        [e.value for e in direct.witness.entries]
    )
    assert direct.value.value == pytest.approx(4.0)
