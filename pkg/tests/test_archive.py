import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynmopso.archive import (
    Archive,
    ArchiveEntry,
    archive_insert,
    crowding_distance,
    dominates,
    non_dominated_set,
    pof_image,
    reevaluate_entries,
)
from dynmopso.benchmarks import fda1_evaluate, make_problem
from dynmopso.problem import DynamicProblem


def brute_force_front(points):
    points = [tuple(p) for p in points]
    out = []
    for i, p in enumerate(points):
        if not any(all(a <= b for a, b in zip(q, p)) and any(a < b for a, b in zip(q, p))
                   for j, q in enumerate(points) if j != i):
            out.append(i)
    return out


def test_dominates_examples():
    assert dominates([1, 2], [2, 3])
    assert not dominates([1, 2], [1, 2])
    assert not dominates([1, 3], [2, 2])
    assert not dominates([2, 2], [1, 3])
    with pytest.raises(ValueError):
        dominates([1, 2], [1, 2, 3])


vectors = st.lists(st.floats(-5, 5, allow_nan=False), min_size=2, max_size=2)


@given(vectors, vectors, vectors)
def test_dominance_order_properties(a, b, c):
    assert not dominates(a, a)
    assert not (dominates(a, b) and dominates(b, a))
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


def test_non_dominated_set_examples():
    assert non_dominated_set([(1, 3), (2, 2), (3, 1), (2, 3)]).tolist() == brute_force_front(
        [(1, 3), (2, 2), (3, 1), (2, 3)]) == [0, 1, 2]
    assert non_dominated_set([(5, 5)]).tolist() == [0]
    assert non_dominated_set([(1, 1), (1, 1)]).tolist() == [0, 1]
    assert non_dominated_set(np.empty((0, 2))).tolist() == []


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=64))
def test_non_dominated_set_matches_brute_force(points):
    assert non_dominated_set(points).tolist() == brute_force_front(points)


def test_crowding_examples():
    assert np.all(np.isinf(crowding_distance([(0, 1), (1, 0)])))
    cd = crowding_distance([(0, 2), (1, 1), (2, 0)])
    assert cd[1] == pytest.approx(2.0)
    assert np.isinf(cd[0]) and np.isinf(cd[2])
    cd = crowding_distance([(1, 1)] * 4)
    assert np.isinf(cd[0]) and np.isinf(cd[3]) and cd[1] == 0 and cd[2] == 0


def test_pof_image():
    a = Archive(5)
    assert pof_image(a).shape == (0, 2)
    a.insert(np.zeros(3), np.array([0.25, 0.5]), 0.0)
    np.testing.assert_array_equal(pof_image(a), [[0.25, 0.5]])


def test_pof_image_fda1_optima():
    a = Archive(100)
    X = np.zeros((50, 10))
    X[:, 0] = np.linspace(0, 1, 50)
    a.extend(X, fda1_evaluate(X, 0.0), 0.0)
    F = pof_image(a)
    assert len(F) == 50
    np.testing.assert_allclose(F[:, 1], 1 - np.sqrt(F[:, 0]), atol=1e-9)


def _archive(points, capacity=10):
    a = Archive(capacity)
    for k, f in enumerate(points):
        a.insert(np.array([float(k)]), np.array(f, dtype=float), 0.0)
    return a


def test_insert_dominated_candidate_is_rejected():
    a = _archive([(1, 1)])
    archive_insert(a, ArchiveEntry(np.array([9.0]), np.array([2.0, 2.0]), 0.0))
    np.testing.assert_array_equal(a.F, [[1, 1]])


def test_insert_dominating_candidate_clears_archive():
    a = _archive([(1, 1), (2, 0.5)])
    archive_insert(a, ArchiveEntry(np.array([9.0]), np.array([0.0, 0.0]), 0.0))
    np.testing.assert_array_equal(a.F, [[0, 0]])


def test_insert_overflow_evicts_minimal_crowding_interior():
    # crowding of (0,3),(1,2),(1.5,1.5),(3,0): interior gaps
    #   (1,2):     (1.5-0)/3 + (3-1.5)/3 = 1.0
    #   (1.5,1.5): (3-1)/3   + (2-0)/3   = 4/3
    a = _archive([(0, 3), (1, 2), (3, 0)], capacity=3)
    stored = a.insert(np.array([7.0]), np.array([1.5, 1.5]), 0.0)
    assert stored
    assert len(a) == 3
    assert sorted(map(tuple, a.F.tolist())) == [(0, 3), (1.5, 1.5), (3, 0)]


def test_insert_is_idempotent():
    a = _archive([(0, 3), (1, 2), (3, 0)])
    before = a.F.copy()
    assert not a.insert(np.array([1.0]), np.array([1.0, 2.0]), 0.0)
    np.testing.assert_array_equal(a.F, before)
    # same objectives, different decision vector: kept as a duplicate
    assert a.insert(np.array([5.0]), np.array([1.0, 2.0]), 0.0)


def test_random_insertions_keep_invariants():
    rng = np.random.default_rng(1)
    a = Archive(100)
    for step in range(20_000):
        f1 = rng.random()
        f = np.array([f1, 1 - np.sqrt(f1) + 0.2 * rng.random()])
        a.insert(rng.random(2), f, 0.0)
        if step % 2000 == 0:
            assert len(non_dominated_set(a.F)) == len(a)
    assert len(a) <= 100
    assert len(non_dominated_set(a.F)) == len(a)


def _static_problem():
    return DynamicProblem("static", 2, 2, np.zeros(2), np.ones(2),
                          lambda X, t: np.column_stack([X[:, 0], 1 - X[:, 0] + X[:, 1]]))


def test_reevaluate_static_problem_is_identity():
    p = _static_problem()
    X = np.random.default_rng(0).random((30, 2))
    a = Archive(100)
    a.extend(X, p.evaluate_batch(X, 0.0), 0.0)
    F = a.F.copy()
    _, changed, degraded = reevaluate_entries(a, p, 5.0)
    assert (changed, degraded) == (0, 0)
    np.testing.assert_array_equal(a.F, F)


def test_reevaluate_fda1_same_time():
    p = make_problem("fda1")
    X = p.sample(np.random.default_rng(3), 100)
    a = Archive(100)
    a.extend(X, p.evaluate_batch(X, 0.0), 0.0)
    _, changed, _ = reevaluate_entries(a, p, 0.0)
    assert changed == 0


def test_reevaluate_fda1_detects_degradation():
    p = make_problem("fda1")
    x = np.zeros(10)
    x[0] = 0.25
    f0 = p.evaluate(x, 0.0)
    f1 = p.evaluate(x, 0.1)
    assert f1[1] > f0[1] and f1[0] == f0[0]
    a = Archive(10)
    a.insert(x, f0, 0.0)
    _, changed, degraded = reevaluate_entries(a, p, 0.1)
    assert changed == 1 and degraded == 1
    assert a.times[0] == 0.1
    np.testing.assert_array_equal(a.F[0], f1)


def test_reevaluate_prunes_newly_dominated():
    # entry 1 sits on the t=0 set but is dominated once G moves to sin(0.05 pi)
    p = make_problem("fda1")
    X = np.zeros((2, 10))
    X[0, 0], X[1, 0] = 0.4, 0.5
    X[0, 1:] = np.sin(0.05 * np.pi)
    a = Archive(10)
    a.insert(X[1], p.evaluate(X[1], 0.0), 0.0)
    a.insert(X[0], p.evaluate(X[0], 0.0), 0.0)
    assert len(a) == 2
    a.reevaluate(p, 0.1)
    assert len(a) == 1
    np.testing.assert_array_equal(a.X[0], X[0])
