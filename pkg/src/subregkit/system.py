"""Convex constraint systems: a polyhedral-graph set-valued mapping F, a
constraint set A, a reference pair (xbar, ybar), and their derivative objects.

The mapping is represented by its graph polyhedron over (x, y); the solution
set S is the y = ybar slice of the graph intersected with A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lp import LpProblem, lp_feasible, lp_solve
from .polyhedra import (
    ConeVRep,
    LINF,
    NotInSetError,
    PolyNorm,
    Polyhedron,
    contains,
    distance,
    normal_cone_generators,
    project,
    tangent_cone,
)


class InvalidInstanceError(Exception):
    """The instance data violates a standing assumption (e.g. xbar not in S)."""


@dataclass(frozen=True)
class SolutionSet:
    S: Polyhedron


@dataclass(frozen=True)
class ConstraintSystem:
    nx: int
    ny: int
    graph: Polyhedron      # over (x, y) in R^{nx+ny}
    A: Polyhedron          # over x
    xbar: np.ndarray
    ybar: np.ndarray
    norm_x: PolyNorm = LINF
    norm_y: PolyNorm = LINF
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def make(nx, ny, graph, A, xbar, ybar, norm_x=LINF, norm_y=LINF, name="") -> "ConstraintSystem":
        xbar = np.atleast_1d(np.asarray(xbar, dtype=float))
        ybar = np.atleast_1d(np.asarray(ybar, dtype=float))
        if graph.dim != nx + ny or A.dim != nx:
            raise InvalidInstanceError("graph/A dimensions inconsistent with nx, ny")
        if xbar.shape[0] != nx or ybar.shape[0] != ny:
            raise InvalidInstanceError("xbar/ybar lengths inconsistent with nx, ny")
        pt = np.concatenate([xbar, ybar])
        if not contains(graph, pt):
            raise InvalidInstanceError("(xbar, ybar) is not in the graph of F")
        if not contains(A, xbar):
            raise InvalidInstanceError("xbar is not in the constraint set A")
        return ConstraintSystem(nx, ny, graph, A, xbar, ybar, norm_x, norm_y, name)

    @property
    def ref_point(self) -> np.ndarray:
        return np.concatenate([self.xbar, self.ybar])


def image(sys: ConstraintSystem, x) -> Polyhedron:
    """Slice {y : (x, y) in gph F}; may be empty."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    gx = sys.graph.ineq_lhs[:, : sys.nx]
    gy = sys.graph.ineq_lhs[:, sys.nx:]
    ex = sys.graph.eq_lhs[:, : sys.nx]
    ey = sys.graph.eq_lhs[:, sys.nx:]
    return Polyhedron.make(sys.ny,
                           gy, sys.graph.ineq_rhs - gx @ x,
                           ey, sys.graph.eq_rhs - ex @ x)


def residual(sys: ConstraintSystem, x) -> float:
    """d(ybar, F(x)) + d(x, A); +inf when F(x) is empty."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    img = image(sys, x)
    if img.is_empty():
        return float("inf")
    return distance(img, sys.ybar, sys.norm_y) + distance(sys.A, x, sys.norm_x)


def solution_set(sys: ConstraintSystem) -> SolutionSet:
    """S = F^{-1}(ybar) intersected with A (cached on the system)."""
    if "S" not in sys._cache:
        slice_rows = Polyhedron.make(
            sys.nx,
            sys.graph.ineq_lhs[:, : sys.nx],
            sys.graph.ineq_rhs - sys.graph.ineq_lhs[:, sys.nx:] @ sys.ybar,
            sys.graph.eq_lhs[:, : sys.nx],
            sys.graph.eq_rhs - sys.graph.eq_lhs[:, sys.nx:] @ sys.ybar,
        )
        S = slice_rows.intersect(sys.A)
        if not contains(S, sys.xbar):
            raise InvalidInstanceError("xbar does not solve the system")
        sys._cache["S"] = SolutionSet(S)
    return sys._cache["S"]


def _check_in_solution_set(sys: ConstraintSystem, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not contains(solution_set(sys).S, x):
        raise NotInSetError("base point is not in the solution set")
    return x


def graph_tangent_cone(sys: ConstraintSystem, x) -> Polyhedron:
    """Contingent cone of gph F at (x, ybar) (cached per base point)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    key = ("Tgph", tuple(np.round(x, 12)))
    if key not in sys._cache:
        sys._cache[key] = tangent_cone(sys.graph, np.concatenate([x, sys.ybar]))
    return sys._cache[key]


def deriv_min_norm(sys: ConstraintSystem, x, h) -> float:
    """min ||v||_y over v in DF(x, ybar)(h); +inf when DF(x, ybar)(h) is empty."""
    x = _check_in_solution_set(sys, x)
    h = np.atleast_1d(np.asarray(h, dtype=float))
    T = graph_tangent_cone(sys, x)
    # variables: (v, aux); h is fixed
    ny = sys.ny
    naux = 1 if sys.norm_y.kind == "linf" else ny
    Gv = T.ineq_lhs[:, sys.nx:]
    Gh = T.ineq_lhs[:, : sys.nx]
    rows, rhs = [], []
    if Gv.shape[0]:
        rows.append(np.hstack([Gv, np.zeros((Gv.shape[0], naux))]))
        rhs.append(-Gh @ h)
    eye = np.eye(ny)
    aux = np.ones((ny, 1)) if sys.norm_y.kind == "linf" else np.eye(ny)
    rows.append(np.hstack([eye, -aux]))
    rhs.append(np.zeros(ny))
    rows.append(np.hstack([-eye, -aux]))
    rhs.append(np.zeros(ny))
    E = e = None
    if T.eq_lhs.shape[0]:
        E = np.hstack([T.eq_lhs[:, sys.nx:], np.zeros((T.eq_lhs.shape[0], naux))])
        e = -T.eq_lhs[:, : sys.nx] @ h
    obj = np.concatenate([np.zeros(ny), np.ones(naux)])
    res = lp_solve(LpProblem.make(obj, np.vstack(rows), np.concatenate(rhs), E, e))
    if res.status == "infeasible":
        return float("inf")
    assert res.status == "optimal"
    return max(res.value, 0.0)


def inv_deriv_ball_membership(sys: ConstraintSystem, x, u, eta1: float) -> bool:
    """u in DF^{-1}(ybar, x)(eta1 * B_Y), i.e. exists v with ||v||_y <= eta1
    and (u, v) in the graph tangent cone."""
    if eta1 < 0:
        raise ValueError("eta1 must be nonnegative")
    x = _check_in_solution_set(sys, x)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    T = graph_tangent_cone(sys, x)
    ny = sys.ny
    naux = 0 if sys.norm_y.kind == "linf" else ny
    Gv = T.ineq_lhs[:, sys.nx:]
    Gh = T.ineq_lhs[:, : sys.nx]
    rows, rhs = [], []
    if Gv.shape[0]:
        rows.append(np.hstack([Gv, np.zeros((Gv.shape[0], naux))]))
        rhs.append(-Gh @ u)
    eye = np.eye(ny)
    if sys.norm_y.kind == "linf":
        rows.append(eye)
        rhs.append(np.full(ny, eta1))
        rows.append(-eye)
        rhs.append(np.full(ny, eta1))
    else:
        rows.append(np.hstack([eye, -eye]))
        rhs.append(np.zeros(ny))
        rows.append(np.hstack([-eye, -eye]))
        rhs.append(np.zeros(ny))
        rows.append(np.concatenate([np.zeros(ny), np.ones(ny)])[None, :])
        rhs.append(np.array([eta1]))
    E = e = None
    if T.eq_lhs.shape[0]:
        E = np.hstack([T.eq_lhs[:, sys.nx:], np.zeros((T.eq_lhs.shape[0], naux))])
        e = -T.eq_lhs[:, : sys.nx] @ u
    ok, _ = lp_feasible(np.vstack(rows), np.concatenate(rhs), E, e)
    return ok


def coderiv_cone(sys: ConstraintSystem, x) -> ConeVRep:
    """Generators of {(x*, y*) : (x*, -y*) in N(gph F, (x, ybar))}."""
    x = _check_in_solution_set(sys, x)
    nc = normal_cone_generators(sys.graph, np.concatenate([x, sys.ybar]))
    rays = [np.concatenate([r[: sys.nx], -r[sys.nx:]]) for r in nc.rays]
    return ConeVRep(vertices=[np.zeros(sys.nx + sys.ny)], rays=rays)


def project_solution(sys: ConstraintSystem, x):
    """Nearest solution point: (d(x, S), argmin)."""
    return project(solution_set(sys).S, x, sys.norm_x)
