"""The four quantities governing metric subregularity of a polyhedral convex
constraint system, plus the strong-subregularity block.

On the eta scale the four quantities are provably equal:

    1/subreg  =  eta (primal cone inclusion)  =  1/tau (derivative distance
    inequality)  =  1/bcq_tau (dual strong constraint qualification).

For polyhedral instances everything reduces to LPs.  The inclusion-based
quantities exploit that the inclusion's left-hand side scales linearly with
the budget eta1 + eta2, so the critical eta per facet of the target set is a
single LP value; the tau ratio is maximized exactly by normalizing the
denominator to 1.  The subregularity modulus itself is estimated by sampling
(the brute-force oracle cross-checking the exact paths).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .lp import LpProblem, lp_solve
from .polyhedra import (
    DimCapError,
    EmptySetError,
    LINF,
    PolyNorm,
    Polyhedron,
    TOL_ACTIVE,
    contains,
    distance,
    distance_dual_form,
    eliminate,
    enumerate_vrep,
    minkowski_sum_hrep,
    project,
    reduce_redundancy,
    tangent_cone,
    normal_cone_generators,
)
from .system import (
    ConstraintSystem,
    deriv_min_norm,
    graph_tangent_cone,
    solution_set,
)

ETA_CAP = 1e6
TAU_CAP = 1e6
_TOL = 1e-7


class WitnessSearchError(Exception):
    """No tangent-separation witness found; signals a tolerance problem."""


@dataclass
class ModulusReport:
    subreg_est: float
    eta: float
    tau: float
    bcq_tau: float
    delta_schedule: list
    method_tags: dict
    chain_residual: float
    curves: dict = field(default_factory=dict)
    seed: int = 0
    degenerate: bool = False
    conical: dict | None = None


@dataclass
class StrongReport:
    ssubreg_est: float
    eta_strong: float
    kernel_trivial: bool
    singleton: bool


@dataclass
class AnalyzeConfig:
    delta_schedule: list | None = None
    n_samples: int = 20_000
    seed: int = 0
    mode: str = "exact"          # "exact" | "sampled"
    tol_bisect: float = 1e-4     # comparison tolerance on the eta scale


def chain_residual_of(subreg_est: float, eta: float, tau: float, bcq_tau: float) -> float:
    """Spread of the four quantities on the eta scale, relative, capped."""

    def inv(v: float) -> float:
        if v is None or math.isnan(v):
            return math.nan
        if v <= 0.0:
            return math.inf
        if math.isinf(v):
            return 0.0
        return 1.0 / v

    vals = [inv(subreg_est), eta, inv(tau), inv(bcq_tau)]
    if any(v is None or math.isnan(v) for v in vals):
        return math.nan
    clamped = [min(v, ETA_CAP) for v in vals]
    lo, hi = min(clamped), max(clamped)
    return (hi - lo) / max(1.0, lo)


# ---------------------------------------------------------------------------
# base points: one representative per face of S meeting the ball


def _active_set(P: Polyhedron, x, tol: float = TOL_ACTIVE):
    if P.ineq_lhs.shape[0] == 0:
        return ()
    return tuple(np.flatnonzero(np.abs(P.ineq_lhs @ x - P.ineq_rhs) <= tol))


def point_signature(sys: ConstraintSystem, x) -> tuple:
    """Active-set signature; equal signatures give identical cone data."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    S = solution_set(sys).S
    xy = np.concatenate([x, sys.ybar])
    return (_active_set(S, x), _active_set(sys.A, x), _active_set(sys.graph, xy))


def base_points(sys: ConstraintSystem, delta: float, max_subsets: int = 128):
    """xbar plus one relative-interior representative of every face of S
    through xbar, all inside the delta/2 ball (polyhedral worst cases sit on
    faces, and near xbar only faces through xbar matter)."""
    S = solution_set(sys).S
    xbar = sys.xbar
    pts = [xbar.copy()]
    act = list(_active_set(S, xbar))
    if not act:
        return pts
    if 2 ** len(act) <= max_subsets:
        subsets = list(itertools.chain.from_iterable(
            itertools.combinations(act, k) for k in range(len(act) + 1)))
    else:
        subsets = [()] + [tuple(a for a in act if a != i) for i in act]
    ball = sys.norm_x.ball_hrep(sys.nx, delta / 2.0).translate(xbar)
    nx = sys.nx
    seen = set()
    for K in subsets:
        K = set(K)
        rows, rhs, eq_rows, eq_rhs = [], [], [], []
        for i in range(S.ineq_lhs.shape[0]):
            a, b = S.ineq_lhs[i], S.ineq_rhs[i]
            if i in K:
                eq_rows.append(np.concatenate([a, [0.0]]))
                eq_rhs.append(b)
            elif i in act:
                rows.append(np.concatenate([a, [1.0]]))
                rhs.append(b)
            else:
                rows.append(np.concatenate([a, [0.0]]))
                rhs.append(b)
        for a, b in zip(S.eq_lhs, S.eq_rhs):
            eq_rows.append(np.concatenate([a, [0.0]]))
            eq_rhs.append(b)
        for a, b in zip(ball.ineq_lhs, ball.ineq_rhs):
            rows.append(np.concatenate([a, [0.0]]))
            rhs.append(b)
        rows.append(np.concatenate([np.zeros(nx), [1.0]]))  # margin <= 1
        rhs.append(1.0)
        obj = np.concatenate([np.zeros(nx), [-1.0]])  # maximize margin
        res = lp_solve(LpProblem.make(obj, np.vstack(rows), np.array(rhs),
                                      np.vstack(eq_rows) if eq_rows else None,
                                      np.array(eq_rhs) if eq_rows else None))
        if res.status != "optimal" or -res.value <= 1e-7:
            continue
        x = res.point[:nx]
        sig = point_signature(sys, x)
        if sig in seen or np.abs(x - xbar).max() <= 1e-10:
            continue
        seen.add(sig)
        pts.append(x)
    return pts


# ---------------------------------------------------------------------------
# the eta quantity: cone inclusion with budgeted perturbations


def _norm_leq_rows(n_vars: int, offset: int, dim: int, bound_col: int, kind: str,
                   aux_offset: int | None = None):
    """Rows enforcing ||w|| <= t for variables w at `offset` and t at
    `bound_col`; l1 needs `dim` auxiliary variables at `aux_offset`."""
    rows, rhs = [], []
    if kind == "linf":
        for i in range(dim):
            for s in (1.0, -1.0):
                r = np.zeros(n_vars)
                r[offset + i] = s
                r[bound_col] = -1.0
                rows.append(r)
                rhs.append(0.0)
    else:
        for i in range(dim):
            for s in (1.0, -1.0):
                r = np.zeros(n_vars)
                r[offset + i] = s
                r[aux_offset + i] = -1.0
                rows.append(r)
                rhs.append(0.0)
        r = np.zeros(n_vars)
        r[aux_offset: aux_offset + dim] = 1.0
        r[bound_col] = -1.0
        rows.append(r)
        rhs.append(0.0)
    return rows, rhs


def _inclusion_blocks(sys: ConstraintSystem, T_A: Polyhedron, T_gph: Polyhedron,
                      eta_total: float):
    """Constraint blocks over (u, v, b, eta1, eta2, aux...) for the
    inclusion's left-hand side: (u, v) in T(gph F), ||v||_y <= eta1,
    u - b in T(A, x), ||b||_x <= eta2, eta1 + eta2 <= eta_total."""
    nx, ny = sys.nx, sys.ny
    n_aux_v = 0 if sys.norm_y.kind == "linf" else ny
    n_aux_b = 0 if sys.norm_x.kind == "linf" else nx
    n = nx + ny + nx + 2 + n_aux_v + n_aux_b
    iu, iv, ib = 0, nx, nx + ny
    ie1, ie2 = ib + nx, ib + nx + 1
    iav = ie2 + 1
    iab = iav + n_aux_v
    rows, rhs, eq_rows, eq_rhs = [], [], [], []

    # (u, v) in T(gph F, (x, ybar))
    for a, b in zip(T_gph.ineq_lhs, T_gph.ineq_rhs):
        r = np.zeros(n)
        r[iu:iu + nx] = a[:nx]
        r[iv:iv + ny] = a[nx:]
        rows.append(r)
        rhs.append(b)
    for a, b in zip(T_gph.eq_lhs, T_gph.eq_rhs):
        r = np.zeros(n)
        r[iu:iu + nx] = a[:nx]
        r[iv:iv + ny] = a[nx:]
        eq_rows.append(r)
        eq_rhs.append(b)

    # ||v||_y <= eta1
    nr, nh = _norm_leq_rows(n, iv, ny, ie1, sys.norm_y.kind, iav)
    rows.extend(nr)
    rhs.extend(nh)

    # u - b in T(A, x)
    for a, b in zip(T_A.ineq_lhs, T_A.ineq_rhs):
        r = np.zeros(n)
        r[iu:iu + nx] = a
        r[ib:ib + nx] = -a
        rows.append(r)
        rhs.append(b)
    for a, b in zip(T_A.eq_lhs, T_A.eq_rhs):
        r = np.zeros(n)
        r[iu:iu + nx] = a
        r[ib:ib + nx] = -a
        eq_rows.append(r)
        eq_rhs.append(b)

    # ||b||_x <= eta2
    nr, nh = _norm_leq_rows(n, ib, nx, ie2, sys.norm_x.kind, iab)
    rows.extend(nr)
    rhs.extend(nh)

    # budget
    r = np.zeros(n)
    r[ie1] = r[ie2] = 1.0
    rows.append(r)
    rhs.append(eta_total)
    for col in (ie1, ie2):
        r = np.zeros(n)
        r[col] = -1.0
        rows.append(r)
        rhs.append(0.0)
    return n, iu, np.vstack(rows), np.array(rhs), \
        (np.vstack(eq_rows) if eq_rows else None), \
        (np.array(eq_rhs) if eq_rows else None)


def _lhs_support(sys: ConstraintSystem, T_A: Polyhedron, T_gph: Polyhedron, q) -> float:
    """sup of q . u over the inclusion's left-hand side at unit budget."""
    n, iu, G, g, E, e = _inclusion_blocks(sys, T_A, T_gph, 1.0)
    obj = np.zeros(n)
    obj[iu:iu + sys.nx] = np.asarray(q, dtype=float)
    res = lp_solve(LpProblem.make(obj, G, g, E, e, sense="maximize"))
    if res.status == "unbounded":
        return math.inf
    assert res.status == "optimal", res.status
    return res.value


def _target_hrep(sys: ConstraintSystem, T_S: Polyhedron) -> Polyhedron:
    """H-representation of T(S, x) + unit ball of norm_x, pruned."""
    return minkowski_sum_hrep(T_S, sys.norm_x.ball_hrep(sys.nx))


def eta_value_at(sys: ConstraintSystem, x) -> float:
    """Largest eta such that the cone inclusion holds at base point x.

    The left-hand side scales linearly with the budget, so per target facet
    q.w <= c the critical eta is c / sup_{unit budget} q.u: one LP per facet.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    S = solution_set(sys).S
    T_S = tangent_cone(S, x)
    T_A = tangent_cone(sys.A, x)
    T_gph = graph_tangent_cone(sys, x)
    target = _target_hrep(sys, T_S)
    best = ETA_CAP
    for q, c in zip(target.ineq_lhs, target.ineq_rhs):
        v = _lhs_support(sys, T_A, T_gph, q)
        if v <= _TOL:
            continue
        if math.isinf(v):
            return 0.0
        best = min(best, c / v)
    return max(best, 0.0)


def eta_holds(sys: ConstraintSystem, x, eta: float) -> bool:
    """Does the inclusion hold at x for all budgets eta1 + eta2 < eta?"""
    if eta <= 0:
        raise ValueError("eta must be positive")
    return eta <= eta_value_at(sys, x) + _TOL


def eta_constant(sys: ConstraintSystem, delta_schedule, tol_bisect: float = 1e-4):
    """sup{eta : inclusion holds at all solution points near xbar}.

    Returns (headline value at the smallest delta, per-delta curve).
    """
    values = {}
    curve = []
    for delta in delta_schedule:
        v = math.inf
        for x in base_points(sys, delta):
            sig = point_signature(sys, x)
            if sig not in values:
                values[sig] = eta_value_at(sys, x)
            v = min(v, values[sig])
        curve.append(min(v, ETA_CAP))
    return curve[-1], curve


# ---------------------------------------------------------------------------
# the tau quantity: derivative distance inequality


def _polar_ball_vertices(cone: Polyhedron, nm: PolyNorm):
    """Vertices of polar(cone) intersected with the dual unit ball."""
    vr = enumerate_vrep(cone)
    d = cone.dim
    ball = nm.dual.ball_hrep(d)
    rows = [ball.ineq_lhs]
    rhs = [ball.ineq_rhs]
    for r in vr.rays:
        rows.append(np.asarray(r, float)[None, :])
        rhs.append(np.zeros(1))
    D = Polyhedron.make(d, np.vstack(rows), np.concatenate(rhs))
    verts = enumerate_vrep(D).vertices
    return [v for v in verts if np.abs(v).max() > 1e-9]


def _deriv_epigraph(sys: ConstraintSystem, x) -> Polyhedron:
    """H-rep over (h, s) of {(h, s) : exists v, ||v||_y <= s, (h, v) in
    T(gph F, (x, ybar))} -- the epigraph of h -> d(0, DF(x, ybar)(h))."""
    T = graph_tangent_cone(sys, x)
    nx, ny = sys.nx, sys.ny
    n_aux = 0 if sys.norm_y.kind == "linf" else ny
    n = nx + 1 + ny + n_aux
    ih, is_, iv, ia = 0, nx, nx + 1, nx + 1 + ny
    rows, rhs, eq_rows, eq_rhs = [], [], [], []
    for a, b in zip(T.ineq_lhs, T.ineq_rhs):
        r = np.zeros(n)
        r[ih:ih + nx] = a[:nx]
        r[iv:iv + ny] = a[nx:]
        rows.append(r)
        rhs.append(b)
    for a, b in zip(T.eq_lhs, T.eq_rhs):
        r = np.zeros(n)
        r[ih:ih + nx] = a[:nx]
        r[iv:iv + ny] = a[nx:]
        eq_rows.append(r)
        eq_rhs.append(b)
    nr, nh = _norm_leq_rows(n, iv, ny, is_, sys.norm_y.kind, ia)
    rows.extend(nr)
    rhs.extend(nh)
    lifted = Polyhedron.make(n, np.vstack(rows), np.array(rhs),
                             np.vstack(eq_rows) if eq_rows else None,
                             np.array(eq_rhs) if eq_rows else None)
    return eliminate(lifted, list(range(iv, n)))


def tau_at(sys: ConstraintSystem, x, mode: str = "exact",
           n_samples: int = 500, seed: int = 0) -> float:
    """sup over directions h of d(h,T(S,x)) / (d(0,DF(x,ybar)(h)) + d(h,T(A,x))).

    Exact mode normalizes the denominator to 1 and maximizes each linear
    piece of the numerator: one LP per dual generator.  Sampled mode
    maximizes over random unit directions.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    S = solution_set(sys).S
    T_S = tangent_cone(S, x)
    T_A = tangent_cone(sys.A, x)
    if mode == "sampled":
        return _tau_sampled(sys, x, T_S, T_A, n_samples, seed)
    num_gens = _polar_ball_vertices(T_S, sys.norm_x)
    if not num_gens:
        return 0.0
    den_gens = _polar_ball_vertices(T_A, sys.norm_x)
    epi = _deriv_epigraph(sys, x)
    nx = sys.nx
    n = nx + 2  # (h, s1, s2)
    rows, rhs, eq_rows, eq_rhs = [], [], [], []
    for a, b in zip(epi.ineq_lhs, epi.ineq_rhs):
        r = np.zeros(n)
        r[:nx + 1] = a
        rows.append(r)
        rhs.append(b)
    for a, b in zip(epi.eq_lhs, epi.eq_rhs):
        r = np.zeros(n)
        r[:nx + 1] = a
        eq_rows.append(r)
        eq_rhs.append(b)
    for a in den_gens:
        r = np.zeros(n)
        r[:nx] = a
        r[nx + 1] = -1.0
        rows.append(r)
        rhs.append(0.0)
    for col in (nx, nx + 1):  # s1, s2 >= 0
        r = np.zeros(n)
        r[col] = -1.0
        rows.append(r)
        rhs.append(0.0)
    r = np.zeros(n)
    r[nx] = r[nx + 1] = 1.0  # denominator normalized to 1
    rows.append(r)
    rhs.append(1.0)
    G, g = np.vstack(rows), np.array(rhs)
    E = np.vstack(eq_rows) if eq_rows else None
    e = np.array(eq_rhs) if eq_rows else None
    best = 0.0
    for gnum in num_gens:
        obj = np.zeros(n)
        obj[:nx] = gnum
        res = lp_solve(LpProblem.make(obj, G, g, E, e, sense="maximize"))
        if res.status == "unbounded":
            return math.inf
        assert res.status == "optimal"
        best = max(best, res.value)
    return best


def _tau_sampled(sys, x, T_S, T_A, n_samples, seed):
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(n_samples):
        h = rng.standard_normal(sys.nx)
        nrm = sys.norm_x.value(h)
        if nrm < 1e-12:
            continue
        h = h / nrm
        num = distance(T_S, h, sys.norm_x)
        if num <= 1e-9:
            continue
        dm = deriv_min_norm(sys, x, h)
        if math.isinf(dm):
            continue  # DF(h) empty: no constraint
        den = dm + distance(T_A, h, sys.norm_x)
        if den <= 1e-12:
            return math.inf
        best = max(best, num / den)
    return best


def tau_constant(sys: ConstraintSystem, delta_schedule, mode: str = "exact",
                 n_samples: int = 500, seed: int = 0):
    """sup of tau_at over solution points near xbar, per delta; headline is
    the value at the smallest delta."""
    values = {}
    curve = []
    for delta in delta_schedule:
        v = 0.0
        for x in base_points(sys, delta):
            sig = point_signature(sys, x)
            if sig not in values:
                values[sig] = tau_at(sys, x, mode=mode, n_samples=n_samples, seed=seed)
            v = max(v, values[sig])
        curve.append(v)
    return curve[-1], curve


# ---------------------------------------------------------------------------
# the dual quantity: strong BCQ


def bcq_min_tau(sys: ConstraintSystem, x) -> float:
    """Minimal tau with N(S,x) cap B* inside tau(D*F(x,ybar)(B*) + N(A,x) cap B*).

    Coderivative and normal cones are positively homogeneous, so the scaled
    inclusion is a single LP per generator of the left-hand side.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    S = solution_set(sys).S
    T_S = tangent_cone(S, x)
    gens = _polar_ball_vertices(T_S, sys.norm_x)
    if not gens:
        return 0.0
    xy = np.concatenate([x, sys.ybar])
    n_gph = normal_cone_generators(sys.graph, xy).rays
    n_A = normal_cone_generators(sys.A, x).rays
    nx, ny = sys.nx, sys.ny
    k, j = len(n_gph), len(n_A)
    Nx = np.array([r[:nx] for r in n_gph]).reshape(k, nx)
    Ny = np.array([r[nx:] for r in n_gph]).reshape(k, ny)
    Am = np.array(n_A).reshape(j, nx)
    dual_x, dual_y = sys.norm_x.dual, sys.norm_y.dual
    n_aux_y = 0 if dual_y.kind == "linf" else ny
    n_aux_x = 0 if dual_x.kind == "linf" else nx
    n = k + j + 1 + n_aux_y + n_aux_x
    itau = k + j
    iay, iax = itau + 1, itau + 1 + n_aux_y

    rows, rhs = [], []
    # y* = -Ny^T lambda must satisfy ||y*||_{Y*} <= tau
    for i in range(ny):
        coef = -Ny[:, i] if k else np.zeros(0)
        for s in (1.0, -1.0):
            r = np.zeros(n)
            r[:k] = s * coef
            if dual_y.kind == "linf":
                r[itau] = -1.0
            else:
                r[iay + i] = -1.0
            rows.append(r)
            rhs.append(0.0)
    if dual_y.kind == "l1":
        r = np.zeros(n)
        r[iay:iay + ny] = 1.0
        r[itau] = -1.0
        rows.append(r)
        rhs.append(0.0)
    # x2* = Am^T mu must satisfy ||x2*||_{X*} <= tau
    for i in range(nx):
        coef = Am[:, i] if j else np.zeros(0)
        for s in (1.0, -1.0):
            r = np.zeros(n)
            r[k:k + j] = s * coef
            if dual_x.kind == "linf":
                r[itau] = -1.0
            else:
                r[iax + i] = -1.0
            rows.append(r)
            rhs.append(0.0)
    if dual_x.kind == "l1":
        r = np.zeros(n)
        r[iax:iax + nx] = 1.0
        r[itau] = -1.0
        rows.append(r)
        rhs.append(0.0)
    # lambda, mu >= 0
    for col in range(k + j):
        r = np.zeros(n)
        r[col] = -1.0
        rows.append(r)
        rhs.append(0.0)
    G, g = np.vstack(rows), np.array(rhs)

    obj = np.zeros(n)
    obj[itau] = 1.0
    best = 0.0
    for gen in gens:
        # Nx^T lambda + Am^T mu = gen
        E = np.zeros((nx, n))
        if k:
            E[:, :k] = Nx.T
        if j:
            E[:, k:k + j] = Am.T
        res = lp_solve(LpProblem.make(obj, G, g, E, gen))
        if res.status == "infeasible":
            return math.inf
        assert res.status == "optimal"
        best = max(best, res.value)
    return best


def bcq_constant(sys: ConstraintSystem, delta_schedule):
    values = {}
    curve = []
    for delta in delta_schedule:
        v = 0.0
        for x in base_points(sys, delta):
            sig = point_signature(sys, x)
            if sig not in values:
                values[sig] = bcq_min_tau(sys, x)
            v = max(v, values[sig])
        curve.append(v)
    return curve[-1], curve


# ---------------------------------------------------------------------------
# strong metric subregularity


def strong_eta_sup(sys: ConstraintSystem) -> float:
    """sup{eta : inclusion into the plain unit ball holds at xbar} =
    1 / ssubreg."""
    T_A = tangent_cone(sys.A, sys.xbar)
    T_gph = graph_tangent_cone(sys, sys.xbar)
    ball = sys.norm_x.ball_hrep(sys.nx)
    best = ETA_CAP
    for q, c in zip(ball.ineq_lhs, ball.ineq_rhs):
        v = _lhs_support(sys, T_A, T_gph, q)
        if v <= _TOL:
            continue
        if math.isinf(v):
            return 0.0
        best = min(best, c / v)
    return max(best, 0.0)


def strong_inclusion_holds(sys: ConstraintSystem, eta: float) -> bool:
    if eta <= 0:
        raise ValueError("eta must be positive")
    return eta <= strong_eta_sup(sys) + _TOL


def kernel_condition(sys: ConstraintSystem) -> bool:
    """DF^{-1}(ybar, xbar)(0) cap T(A, xbar) = {0}; in finite dimension this
    is equivalent to strong subregularity holding."""
    T = graph_tangent_cone(sys, sys.xbar)
    T_A = tangent_cone(sys.A, sys.xbar)
    nx = sys.nx
    rows = [T.ineq_lhs[:, :nx], T_A.ineq_lhs, np.eye(nx), -np.eye(nx)]
    rhs = [np.zeros(T.ineq_lhs.shape[0]), np.zeros(T_A.ineq_lhs.shape[0]),
           np.ones(nx), np.ones(nx)]
    G, g = np.vstack(rows), np.concatenate(rhs)
    E_rows = [T.eq_lhs[:, :nx], T_A.eq_lhs]
    E = np.vstack(E_rows)
    e = np.zeros(E.shape[0])
    if E.shape[0] == 0:
        E = e = None
    for i in range(nx):
        for s in (1.0, -1.0):
            obj = np.zeros(nx)
            obj[i] = s
            res = lp_solve(LpProblem.make(obj, G, g, E, e, sense="maximize"))
            if res.status == "optimal" and res.value > _TOL:
                return False
    return True


def is_singleton_solution(sys: ConstraintSystem) -> bool:
    vr = enumerate_vrep(solution_set(sys).S)
    if vr.rays or len(vr.vertices) != 1:
        return False
    return bool(np.abs(vr.vertices[0] - sys.xbar).max() <= 1e-7)


def conical_case(sys: ConstraintSystem) -> dict:
    """If S - xbar is a cone, the inclusion needs checking only at xbar."""
    shifted = solution_set(sys).S.translate(-sys.xbar)
    vr = enumerate_vrep(shifted)
    applicable = bool(vr.vertices) and all(np.abs(v).max() <= 1e-7 for v in vr.vertices)
    out = {"applicable": applicable, "eta_at_xbar": None}
    if applicable:
        out["eta_at_xbar"] = eta_value_at(sys, sys.xbar)
    return out


# ---------------------------------------------------------------------------
# sampled subregularity estimate (the brute-force oracle)


def _residual_pl_form(sys: ConstraintSystem):
    """Piecewise-linear form of x -> d(ybar, F(x)) via epigraph projection.

    Returns (dom_G, dom_g, grad_G, grad_g): r(x) = max(grad_G x - grad_g, 0)
    when dom_G x <= dom_g componentwise, +inf otherwise.
    """
    nx, ny = sys.nx, sys.ny
    n_aux = 0 if sys.norm_y.kind == "linf" else ny
    n = nx + 1 + ny + n_aux
    ix, is_, iy, ia = 0, nx, nx + 1, nx + 1 + ny
    rows, rhs, eq_rows, eq_rhs = [], [], [], []
    for a, b in zip(sys.graph.ineq_lhs, sys.graph.ineq_rhs):
        r = np.zeros(n)
        r[ix:ix + nx] = a[:nx]
        r[iy:iy + ny] = a[nx:]
        rows.append(r)
        rhs.append(b)
    for a, b in zip(sys.graph.eq_lhs, sys.graph.eq_rhs):
        r = np.zeros(n)
        r[ix:ix + nx] = a[:nx]
        r[iy:iy + ny] = a[nx:]
        eq_rows.append(r)
        eq_rhs.append(b)
    # ||ybar - y|| <= s
    if sys.norm_y.kind == "linf":
        for i in range(ny):
            for s in (1.0, -1.0):
                r = np.zeros(n)
                r[iy + i] = -s
                r[is_] = -1.0
                rows.append(r)
                rhs.append(-s * sys.ybar[i])
    else:
        for i in range(ny):
            for s in (1.0, -1.0):
                r = np.zeros(n)
                r[iy + i] = -s
                r[ia + i] = -1.0
                rows.append(r)
                rhs.append(-s * sys.ybar[i])
        r = np.zeros(n)
        r[ia:ia + ny] = 1.0
        r[is_] = -1.0
        rows.append(r)
        rhs.append(0.0)
    lifted = Polyhedron.make(n, np.vstack(rows), np.array(rhs),
                             np.vstack(eq_rows) if eq_rows else None,
                             np.array(eq_rhs) if eq_rows else None)
    proj = reduce_redundancy(eliminate(lifted, list(range(iy, n))))
    # equality rows in (x, s) would pin s; treat them as two inequalities
    G = proj.ineq_lhs
    g = proj.ineq_rhs
    if proj.eq_lhs.shape[0]:
        G = np.vstack([G, proj.eq_lhs, -proj.eq_lhs])
        g = np.concatenate([g, proj.eq_rhs, -proj.eq_rhs])
    beta = G[:, nx]
    dom = np.abs(beta) <= 1e-9
    grad = beta < -1e-9
    dom_G, dom_g = G[dom][:, :nx], g[dom]
    scale = -beta[grad]
    grad_G = G[grad][:, :nx] / scale[:, None]
    grad_g = g[grad] / scale
    return dom_G, dom_g, grad_G, grad_g


def _sampling_forms(sys: ConstraintSystem):
    if "sampling_forms" not in sys._cache:
        S = solution_set(sys).S
        GS, cS = distance_dual_form(S, sys.norm_x)
        GA, cA = distance_dual_form(sys.A, sys.norm_x)
        forms = (GS, cS, GA, cA, _residual_pl_form(sys))
        sys._cache["sampling_forms"] = forms
    return sys._cache["sampling_forms"]


def _sample_ball(sys: ConstraintSystem, delta: float, n: int, rng) -> np.ndarray:
    nx = sys.nx
    if sys.norm_x.kind == "linf":
        U = rng.uniform(-1.0, 1.0, size=(n, nx))
    else:
        U = rng.uniform(-1.0, 1.0, size=(2 * n + 64, nx))
        U = U[np.abs(U).sum(axis=1) <= 1.0][:n]
        while U.shape[0] < n:
            extra = rng.uniform(-1.0, 1.0, size=(2 * n, nx))
            extra = extra[np.abs(extra).sum(axis=1) <= 1.0]
            U = np.vstack([U, extra])[:n]
    return sys.xbar + delta * U


def _ratio_arrays(sys: ConstraintSystem, X: np.ndarray):
    GS, cS, GA, cA, (dom_G, dom_g, grad_G, grad_g) = _sampling_forms(sys)
    dS = np.maximum((X @ GS.T - cS).max(axis=1), 0.0)
    dA = np.maximum((X @ GA.T - cA).max(axis=1), 0.0)
    if dom_G.shape[0]:
        ok = np.all(X @ dom_G.T <= dom_g + 1e-9, axis=1)
    else:
        ok = np.ones(X.shape[0], dtype=bool)
    if grad_G.shape[0]:
        ry = np.maximum((X @ grad_G.T - grad_g).max(axis=1), 0.0)
    else:
        ry = np.zeros(X.shape[0])
    resid = np.where(ok, ry + dA, np.inf)
    return dS, resid


def estimate_subreg(sys: ConstraintSystem, delta: float, n_samples: int,
                    seed: int = 0) -> float:
    """Sampled sup of d(x, S) / (d(ybar, F(x)) + d(x, A)) over the delta ball.

    Uniform ball samples plus boundary-biased points (projections onto S
    shifted slightly outward).  Deterministic for a fixed seed.  Points with
    empty F(x) impose no constraint (ratio 0).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    sup, _ = _sample_ratio_sups(sys, delta, n_samples, seed)
    return sup


def _sample_ratio_sups(sys: ConstraintSystem, delta: float, n_samples: int, seed: int):
    """(subreg estimate, strong-subreg estimate) from one sampling pass."""
    rng = np.random.default_rng(seed)
    X = _sample_ball(sys, delta, n_samples, rng)
    S = solution_set(sys).S
    n_boundary = min(400, max(n_samples // 10, 1))
    extras = []
    for x in X[:n_boundary]:
        d0, z = project(S, x, sys.norm_x)
        if d0 <= 1e-12:
            continue
        direction = (x - z) / d0
        for t in (1e-3 * delta, 1e-2 * delta, 0.1 * delta):
            extras.append(z + t * direction)
    if extras:
        X = np.vstack([X, np.array(extras)])
    dS, resid = _ratio_arrays(sys, X)
    with np.errstate(divide="ignore", invalid="ignore"):
        mask = (dS > 1e-9) & np.isfinite(resid)
        ratios = np.where(mask & (resid > 1e-13), dS / np.maximum(resid, 1e-300), 0.0)
        ratios = np.where(mask & (resid <= 1e-13), np.inf, ratios)
        sub = float(ratios.max()) if ratios.size else 0.0
        dev = sys.norm_x.value_many(X - sys.xbar)
        smask = (dev > 1e-9) & np.isfinite(resid)
        sratios = np.where(smask & (resid > 1e-13), dev / np.maximum(resid, 1e-300), 0.0)
        sratios = np.where(smask & (resid <= 1e-13), np.inf, sratios)
        ssub = float(sratios.max()) if sratios.size else 0.0
    if sub > TAU_CAP:
        sub = math.inf
    if ssub > TAU_CAP:
        ssub = math.inf
    return sub, ssub


# ---------------------------------------------------------------------------
# tangent-separation witness (gamma-distance estimate at some boundary point)


def tangent_witness(omega: Polyhedron, x, gamma: float, nm: PolyNorm = LINF,
                    margin: float = 1e-9):
    """Find z in omega with gamma * ||x - z|| < d(x - z, T(omega, z)).

    Candidates: a centered nearest point, then vertices of omega.  Raises
    WitnessSearchError if none verifies (would signal a tolerance problem,
    since such z always exists for gamma < 1).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie strictly between 0 and 1")
    if contains(omega, x):
        raise ValueError("x must lie outside the set")
    d0, z0 = project(omega, x, nm)
    candidates = [z0]
    z1 = _centered_projection(omega, x, nm, d0)
    if z1 is not None:
        candidates.append(z1)
    try:
        vr = enumerate_vrep(omega)
        verts = sorted(vr.vertices, key=lambda v: nm.value(x - v))
        candidates.extend(verts[:16])
    except DimCapError:
        pass
    best = None
    for z in candidates:
        gap = distance(tangent_cone(omega, z), x - z, nm) - gamma * nm.value(x - z)
        if best is None or gap > best[1]:
            best = (z, gap)
        if gap > margin:
            return z, gap
    raise WitnessSearchError(
        f"no witness with margin > {margin:g}; best gap {best[1]:.3e}")


def _centered_projection(omega: Polyhedron, x, nm: PolyNorm, d0: float):
    """Among nearest points, pick one minimizing the complementary norm of
    the gap; breaks ties toward a 'centered' witness."""
    other = nm.dual  # the complementary polyhedral norm
    d = omega.dim
    # variables: (p, aux_other)
    naux = 1 if other.kind == "linf" else d
    n = d + naux
    rows, rhs = [], []
    if omega.ineq_lhs.shape[0]:
        rows.append(np.hstack([omega.ineq_lhs, np.zeros((omega.ineq_lhs.shape[0], naux))]))
        rhs.append(omega.ineq_rhs)
    eye = np.eye(d)
    aux = np.ones((d, 1)) if other.kind == "linf" else np.eye(d)
    rows.append(np.hstack([-eye, -aux]))
    rhs.append(-x)
    rows.append(np.hstack([eye, -aux]))
    rhs.append(x)
    # stay (almost) optimal for the primary norm
    bound = d0 * (1.0 + 1e-9) + 1e-12
    if nm.kind == "linf":
        rows.append(np.hstack([-eye, np.zeros((d, naux))]))
        rhs.append(bound - x)
        rows.append(np.hstack([eye, np.zeros((d, naux))]))
        rhs.append(bound + x)
    else:
        # |x - p| summed: bound via the aux of the other norm only if it is l1
        pass
    E = np.hstack([omega.eq_lhs, np.zeros((omega.eq_lhs.shape[0], naux))]) \
        if omega.eq_lhs.shape[0] else None
    e = omega.eq_rhs if omega.eq_lhs.shape[0] else None
    obj = np.concatenate([np.zeros(d), np.ones(naux)])
    res = lp_solve(LpProblem.make(obj, np.vstack(rows), np.concatenate(rhs), E, e))
    if res.status != "optimal":
        return None
    p = res.point[:d]
    if nm.value(x - p) > d0 * (1.0 + 1e-6) + 1e-9:
        return None
    return p


# ---------------------------------------------------------------------------
# orchestrator


def default_delta_schedule(sys: ConstraintSystem) -> list:
    scale = max(1.0, float(np.abs(sys.xbar).max()))
    return [0.5 * scale, 0.25 * scale, 0.1 * scale, 0.05 * scale]


def analyze(sys: ConstraintSystem, config: AnalyzeConfig | None = None):
    """Compute all four quantities, the chain residual, and the strong block."""
    config = config or AnalyzeConfig()
    sched = list(config.delta_schedule or default_delta_schedule(sys))
    if any(d <= 0 for d in sched) or any(a <= b for a, b in zip(sched, sched[1:])):
        raise ValueError("delta schedule must be positive and strictly decreasing")

    tags = {}
    curves = {}
    subreg_est, ssubreg_est = _sample_ratio_sups(sys, sched[-1], config.n_samples,
                                                 config.seed)
    tags["subreg"] = "sampled"
    curves["subreg"] = [_sample_ratio_sups(sys, d, max(config.n_samples // 4, 1000),
                                           config.seed)[0] for d in sched]

    exact_failed = config.mode == "sampled"
    eta = tau = bcq = math.nan
    if not exact_failed:
        try:
            eta, curves["eta"] = eta_constant(sys, sched, config.tol_bisect)
            tau, curves["tau"] = tau_constant(sys, sched)
            bcq, curves["bcq"] = bcq_constant(sys, sched)
            tags.update(eta="exact", tau="exact", bcq="exact")
        except DimCapError:
            exact_failed = True
    if exact_failed:
        tau, curves["tau"] = tau_constant(sys, sched, mode="sampled",
                                          n_samples=500, seed=config.seed)
        tags.update(eta="unavailable", tau="sampled", bcq="unavailable")
        eta = bcq = math.nan

    degenerate = (not math.isnan(eta)) and eta >= ETA_CAP
    report = ModulusReport(
        subreg_est=subreg_est,
        eta=eta,
        tau=tau,
        bcq_tau=bcq,
        delta_schedule=sched,
        method_tags=tags,
        chain_residual=chain_residual_of(subreg_est, eta, tau, bcq),
        curves=curves,
        seed=config.seed,
        degenerate=degenerate,
    )
    try:
        report.conical = conical_case(sys)
    except DimCapError:
        report.conical = {"applicable": None, "eta_at_xbar": None}

    eta_strong = strong_eta_sup(sys)
    try:
        singleton = is_singleton_solution(sys)
    except DimCapError:
        singleton = eta_strong > 0.0
    strong = StrongReport(
        ssubreg_est=ssubreg_est,
        eta_strong=eta_strong,
        kernel_trivial=kernel_condition(sys),
        singleton=singleton,
    )
    return report, strong
