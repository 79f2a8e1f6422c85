import math
from fractions import Fraction

import numpy as np
import pytest

from cstriang.search import (
    edge_objective,
    l1_objective,
    l1_sparsify,
    minmax_edge_search,
    near_zero_count,
    random_rotation,
    rationalize,
)

PHI = (1 + math.sqrt(5)) / 2
ICOSAHEDRON_HALF = np.array(
    [[0, 1, PHI], [0, -1, PHI], [1, PHI, 0], [-1, PHI, 0], [PHI, 0, 1], [PHI, 0, -1]]
)


def as_float(config):
    return np.array([[float(x) for x in p] for p in config.points])


def test_cross_polytope_objective_is_zero():
    assert edge_objective(np.eye(4)) == pytest.approx(0.0, abs=1e-12)


def test_icosahedron_objective():
    assert edge_objective(ICOSAHEDRON_HALF) == pytest.approx(1 / math.sqrt(5), abs=1e-12)


def test_p648_objective(p648):
    x = as_float(p648)
    assert edge_objective(x[:24]) == pytest.approx(0.24, abs=1e-12)
    assert edge_objective(x[:24], normalize=False) == pytest.approx(12 / 49, abs=1e-12)


def test_search_is_deterministic_and_monotone():
    a = minmax_edge_search(12, 3, seed=3, iterations=800)
    b = minmax_edge_search(12, 3, seed=3, iterations=800)
    assert np.array_equal(a.trace, b.trace)
    assert np.array_equal(a.best_points, b.best_points)
    assert np.all(np.diff(a.trace) >= 0)
    assert np.allclose(np.linalg.norm(a.points, axis=1), 1, atol=1e-12)
    assert a.best_so_far == pytest.approx(edge_objective(a.best_points, normalize=False))


def test_search_reaches_icosahedron_value():
    state = minmax_edge_search(12, 3, seed=7, iterations=5000)
    assert state.best_so_far >= 0.44


def test_warm_start_keeps_p648_value(p648):
    state = minmax_edge_search(48, 6, seed=0, iterations=1, initial=as_float(p648))
    assert state.best_so_far >= 0.24 - 1e-12


def test_search_preconditions():
    with pytest.raises(ValueError):
        minmax_edge_search(11, 3)
    with pytest.raises(ValueError):
        minmax_edge_search(6, 3)


def test_sparsify_single_point():
    v = np.array([[0.36, 0.48, 0.8]])
    frame, f = l1_sparsify(v)
    assert f == pytest.approx(1.0, abs=1e-9)
    assert frame.orthogonality_error() < 1e-10


def test_sparsify_identity_value(p648):
    x = as_float(p648)
    assert l1_objective(x) == pytest.approx(576 / 7, abs=1e-9)
    _, f = l1_sparsify(x, restarts=0)
    assert f <= 576 / 7 + 1e-9


def test_sparsify_scrambled_p648(p648):
    x = as_float(p648) @ random_rotation(6, 99).T
    frame, f = l1_sparsify(x, seed=1)
    y = frame.apply(x)
    assert f <= 576 / 7 + 0.5
    assert near_zero_count(y) >= 144
    assert frame.orthogonality_error() < 1e-10


def test_rationalize_examples():
    cfg = rationalize(np.array([[0.42857142, 0.5]]), 10)
    assert cfg.points[0] == (Fraction(3, 7), Fraction(1, 2))
    pair = rationalize(np.array([[0.4285714, 0.5000001], [-0.4285715, -0.4999999]]), 10)
    assert pair.pairing == (1, 0)
    assert pair.points[1] == tuple(-v for v in pair.points[0])
    with pytest.raises(ValueError):
        rationalize(np.array([[0.5]]), 0)
