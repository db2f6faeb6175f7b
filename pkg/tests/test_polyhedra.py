"""Polyhedral geometry: pinned examples and structural invariants."""

import numpy as np
import pytest

from subregkit.polyhedra import (
    L1,
    LINF,
    NotInSetError,
    Polyhedron,
    contains,
    distance,
    distance_dual_form,
    eliminate,
    enumerate_vrep,
    hrep_from_vrep,
    minkowski_sum_hrep,
    normal_cone_generators,
    project,
    reduce_redundancy,
    sum_membership,
    support_value,
    tangent_cone,
)

HALFLINE = Polyhedron.make(1, [[1.0]], [0.0])          # {x <= 0}
QUADRANT = Polyhedron.make(2, [[1, 0], [0, 1]], [0, 0])  # negative quadrant


def box(dim, lo=-1.0, hi=1.0):
    G = np.vstack([np.eye(dim), -np.eye(dim)])
    g = np.concatenate([np.full(dim, hi), np.full(dim, -lo)])
    return Polyhedron.make(dim, G, g)


def test_contains_and_emptiness():
    assert contains(HALFLINE, [-1]) and contains(HALFLINE, [0])
    assert not contains(HALFLINE, [0.1])
    empty = Polyhedron.make(1, [[1], [-1]], [-1, -1])
    assert empty.is_empty()
    assert not HALFLINE.is_empty()


@pytest.mark.parametrize("nm,expected", [(LINF, 1.0), (L1, 1.0)])
def test_distance_halfline(nm, expected):
    d, z = project(HALFLINE, [1.0], nm)
    assert d == pytest.approx(expected, abs=1e-9)
    assert z[0] == pytest.approx(0.0, abs=1e-9)


def test_distance_norm_dependence():
    # point (1,1) to the negative quadrant: linf gives 1, l1 gives 2
    assert distance(QUADRANT, [1, 1], LINF) == pytest.approx(1.0, abs=1e-9)
    assert distance(QUADRANT, [1, 1], L1) == pytest.approx(2.0, abs=1e-9)


def test_support_value_cases():
    assert support_value(box(2), [1, 1]) == pytest.approx(2.0, abs=1e-9)
    assert support_value(HALFLINE, [1]) == pytest.approx(0.0, abs=1e-9)
    assert support_value(HALFLINE, [-1]) == float("inf")


def test_tangent_cone_active_rows():
    T = tangent_cone(HALFLINE, [0.0])
    assert T.is_cone()
    assert contains(T, [-5]) and not contains(T, [1e-3])
    # interior point: whole space
    T2 = tangent_cone(HALFLINE, [-1.0])
    assert T2.ineq_lhs.shape[0] == 0
    with pytest.raises(NotInSetError):
        tangent_cone(HALFLINE, [1.0])


def test_tangent_cone_partial_activity():
    T = tangent_cone(QUADRANT, [0.0, -1.0])
    assert contains(T, [-1, 100]) and not contains(T, [1, 0])


def test_normal_cone_generators():
    nc = normal_cone_generators(QUADRANT, [0.0, 0.0])
    rays = np.array(nc.rays)
    assert rays.shape == (2, 2)
    assert normal_cone_generators(QUADRANT, [-1.0, -1.0]).rays == []


def test_sum_membership():
    # {x <= 0} + 0.5 ball: 0.4 inside, 0.6 outside
    T = tangent_cone(HALFLINE, [0.0])
    assert sum_membership([0.4], T, LINF, 0.5)
    assert not sum_membership([0.6], T, LINF, 0.5)
    with pytest.raises(ValueError):
        sum_membership([0.0], T, LINF, -1.0)


def test_vrep_box_and_cone():
    vr = enumerate_vrep(box(2))
    assert len(vr.vertices) == 4 and not vr.rays
    vr2 = enumerate_vrep(QUADRANT)
    assert len(vr2.rays) == 2
    assert all(np.abs(v).max() < 1e-9 for v in vr2.vertices)


def test_vrep_roundtrip_random():
    """H -> V -> H preserves membership on random probes."""
    rng = np.random.default_rng(3)
    done = 0
    while done < 40:
        dim = int(rng.integers(1, 4))
        m = int(rng.integers(1, 6))
        G = rng.uniform(-1, 1, size=(m, dim))
        g = rng.uniform(0, 1, size=m)  # origin feasible
        P = Polyhedron.make(dim, G, g)
        vr = enumerate_vrep(P)
        if vr.is_empty:
            continue
        Q = hrep_from_vrep(vr, dim)
        probes = rng.uniform(-3, 3, size=(25, dim))
        for x in probes:
            assert contains(P, x, tol=1e-6) == contains(Q, x, tol=1e-6) or \
                abs(distance(P, x, LINF) - distance(Q, x, LINF)) < 1e-6
        done += 1


def test_eliminate_projection():
    # project {(x, y): y >= x, y <= 1} onto x: gives {x <= 1}
    P = Polyhedron.make(2, [[1, -1], [0, 1]], [0, 1])
    proj = eliminate(P, [1])
    assert proj.dim == 1
    assert contains(proj, [0.9]) and not contains(proj, [1.1])


def test_minkowski_sum():
    # {x <= 0} + [-1, 1] = {x <= 1}
    out = minkowski_sum_hrep(HALFLINE, box(1))
    assert contains(out, [0.99]) and not contains(out, [1.01])


def test_reduce_redundancy_drops_rows():
    P = Polyhedron.make(1, [[1], [1], [2]], [1, 2, 10])
    R = reduce_redundancy(P)
    assert R.ineq_lhs.shape[0] == 1
    assert contains(R, [1.0]) and not contains(R, [1.1])


@pytest.mark.parametrize("nm", [LINF, L1])
def test_distance_dual_form_matches_lp(nm):
    rng = np.random.default_rng(11)
    for _ in range(12):
        dim = int(rng.integers(1, 4))
        m = int(rng.integers(1, 6))
        G = rng.uniform(-1, 1, size=(m, dim))
        g = rng.uniform(0, 1, size=m)
        P = Polyhedron.make(dim, G, g)
        Gd, c = distance_dual_form(P, nm)
        for x in rng.uniform(-3, 3, size=(20, dim)):
            fast = max(float((Gd @ x - c).max()), 0.0)
            assert fast == pytest.approx(distance(P, x, nm), abs=1e-7)


def test_cone_homogeneity_property():
    """Tangent cones are closed under positive scaling."""
    rng = np.random.default_rng(5)
    T = tangent_cone(QUADRANT, [0.0, 0.0])
    for _ in range(200):
        h = rng.normal(size=2)
        inside = contains(T, h)
        for lam in (0.5, 2.0, 10.0):
            assert contains(T, lam * h) == inside


def test_translation_invariance_of_tangent_cone():
    v = np.array([3.0, -2.0])
    shifted = QUADRANT.translate(v)
    T0 = tangent_cone(QUADRANT, [0.0, 0.0])
    T1 = tangent_cone(shifted, v)
    rng = np.random.default_rng(9)
    for h in rng.normal(size=(100, 2)):
        assert contains(T0, h) == contains(T1, h)
