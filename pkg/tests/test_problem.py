import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynmopso.benchmarks import make_problem
from dynmopso.problem import TimeContext, compute_time, evaluate, freeze


@pytest.mark.parametrize(
    "severity, frequency, tau, expected",
    [(10, 10, 0, 0.0), (10, 10, 25, 0.2), (10, 10, 199, 1.9)],
)
def test_compute_time_examples(severity, frequency, tau, expected):
    assert compute_time(TimeContext(severity, frequency, tau)) == expected


@pytest.mark.parametrize("severity, frequency", [(0, 10), (10, 0)])
def test_compute_time_rejects_zero(severity, frequency):
    with pytest.raises(ValueError):
        TimeContext(severity, frequency, 5)


@given(
    severity=st.integers(1, 50),
    frequency=st.integers(1, 50),
    k=st.integers(0, 200),
)
def test_compute_time_piecewise_constant(severity, frequency, k):
    values = {compute_time(TimeContext(severity, frequency, tau))
              for tau in range(k * frequency, (k + 1) * frequency)}
    assert values == {k / severity}


@given(frequency=st.integers(1, 20), tau=st.integers(1, 2000))
def test_time_changes_exactly_at_boundaries(frequency, tau):
    now = compute_time(TimeContext(10, frequency, tau))
    before = compute_time(TimeContext(10, frequency, tau - 1))
    assert (now != before) == (tau % frequency == 0)
    assert now >= before
    assert TimeContext(10, frequency, tau).is_boundary() == (tau % frequency == 0)


def test_evaluate_fda1_examples():
    p = make_problem("fda1")
    x = np.zeros(10)
    np.testing.assert_allclose(evaluate(p, x, 0.0), [0.0, 1.0])
    x[0] = 1.0
    np.testing.assert_allclose(evaluate(p, x, 0.0), [1.0, 0.0], atol=1e-15)


def test_evaluate_rejects_bad_input():
    p = make_problem("fda1")
    with pytest.raises(ValueError):
        evaluate(p, np.zeros(9), 0.0)
    x = np.zeros(10)
    x[3] = 1.5
    with pytest.raises(ValueError):
        evaluate(p, x, 0.0)


def test_evaluate_is_pure():
    p = make_problem("dmop3", seed=4)
    x = np.random.default_rng(0).uniform(size=10)
    a = evaluate(p, x, 0.3)
    b = evaluate(p, x, 0.3)
    assert a.tobytes() == b.tobytes()


def test_freeze_ignores_time():
    p = freeze(make_problem("fda1"), 0.0)
    x = np.full(10, 0.3)
    np.testing.assert_array_equal(p.evaluate(x, 0.0), p.evaluate(x, 1.3))
