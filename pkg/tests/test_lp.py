"""LP solver: pinned examples plus randomized self-consistency checks."""

import numpy as np
import pytest

from subregkit.lp import LpDimensionError, LpProblem, lp_feasible, lp_solve


def test_basic_minimum():
    # min x1 + x2 s.t. x1 >= 1, x2 >= 2
    p = LpProblem.make([1, 1], [[-1, 0], [0, -1]], [-1, -2])
    res = lp_solve(p)
    assert res.status == "optimal"
    assert res.value == pytest.approx(3.0, abs=1e-9)
    assert np.allclose(res.point, [1, 2], atol=1e-9)


def test_maximize_sense():
    p = LpProblem.make([1], [[1]], [4], sense="maximize")
    res = lp_solve(p)
    assert res.status == "optimal"
    assert res.value == pytest.approx(4.0, abs=1e-9)


def test_infeasible():
    p = LpProblem.make([0], [[1], [-1]], [-1, -1])  # x <= -1 and x >= 1
    assert lp_solve(p).status == "infeasible"


def test_unbounded_with_ray():
    p = LpProblem.make([-1], [[-1]], [0])  # min -x, x >= 0
    res = lp_solve(p)
    assert res.status == "unbounded"
    # the improving ray must decrease the objective and stay feasible
    ray = res.point
    assert float(np.dot([-1], ray)) < 0
    assert float(np.dot([-1], ray)) <= 1e-12


def test_equality_constraints():
    # min x1 with x1 + x2 = 1, x >= 0 componentwise
    p = LpProblem.make([1, 0], [[-1, 0], [0, -1]], [0, 0], [[1, 1]], [1])
    res = lp_solve(p)
    assert res.status == "optimal"
    assert res.value == pytest.approx(0.0, abs=1e-9)


def test_degenerate_does_not_cycle():
    # many redundant active rows at the optimum
    G = np.array([[1.0, 0], [1, 0], [1, 0], [0, 1], [1, 1], [2, 0]])
    g = np.zeros(6)
    res = lp_solve(LpProblem.make([-1, -1], G, g))
    assert res.status == "optimal"
    assert res.value == pytest.approx(0.0, abs=1e-9)


def test_dimension_errors():
    with pytest.raises(LpDimensionError):
        LpProblem.make([1, 2], [[1]], [0])
    with pytest.raises(LpDimensionError):
        LpProblem.make([1], [[1]], [np.inf])
    with pytest.raises(LpDimensionError):
        LpProblem.make([1], sense="maximise")


def test_random_weak_duality_and_feasibility():
    """Dual multipliers certify the optimal value; feasibility calls agree
    with the solver status."""
    rng = np.random.default_rng(42)
    checked = 0
    for _ in range(300):
        d = rng.integers(1, 5)
        m = rng.integers(1, 7)
        G = rng.normal(size=(m, d))
        x0 = rng.normal(size=d)
        g = G @ x0 + rng.uniform(0, 1, size=m)  # feasible by construction
        c = rng.normal(size=d)
        res = lp_solve(LpProblem.make(c, G, g))
        ok, witness = lp_feasible(G, g)
        assert ok and np.all(G @ witness <= g + 1e-7)
        if res.status != "optimal":
            assert res.status == "unbounded"
            continue
        assert np.all(G @ res.point <= g + 1e-7)
        if res.dual_ineq is None:
            continue
        lam = res.dual_ineq
        # minimize orientation: lambda <= 0 and c = G^T lambda (stationarity)
        assert np.all(lam <= 1e-7)
        assert np.allclose(c - G.T @ lam, 0, atol=1e-6)
        assert res.value == pytest.approx(float(lam @ g), abs=1e-6)
        checked += 1
    assert checked > 50


def test_random_infeasible_detected():
    rng = np.random.default_rng(7)
    for _ in range(100):
        d = rng.integers(1, 4)
        a = rng.normal(size=d)
        a /= np.abs(a).max()
        # a.x <= -1 together with -a.x <= -1 is empty
        G = np.vstack([a, -a])
        ok, witness = lp_feasible(G, [-1.0, -1.0])
        assert not ok and witness is None
