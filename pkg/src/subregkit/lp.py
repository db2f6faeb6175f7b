"""Dense linear programming: two-phase simplex with Bland's anti-cycling rule.

Instances here are tiny (a few dozen variables/rows), so everything is kept
dense in float64 and tuned for robustness rather than speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Feasibility / optimality tolerance shared by all callers.
TOL_LP = 1e-9
# Pivot tolerance; entries below this are treated as zero during elimination.
_TOL_PIVOT = 1e-10
MAX_ITERATIONS = 10_000


class LpError(Exception):
    """Base class for LP failures."""


class LpDimensionError(LpError):
    """Shapes of the problem data are inconsistent."""


class LpStallError(LpError):
    """The simplex loop exceeded the iteration cap."""

    def __init__(self, iterations: int):
        super().__init__(f"simplex exceeded {iterations} iterations")
        self.iterations = iterations


def _as_matrix(m, d: int) -> np.ndarray:
    if m is None:
        return np.zeros((0, d))
    a = np.asarray(m, dtype=float)
    if a.size == 0:
        return np.zeros((0, d))
    if a.ndim != 2:
        a = np.atleast_2d(a)
    return a


def _as_vector(v) -> np.ndarray:
    if v is None:
        return np.zeros(0)
    return np.atleast_1d(np.asarray(v, dtype=float))


@dataclass(frozen=True)
class LpProblem:
    """min/max objective . x  s.t.  ineq_lhs x <= ineq_rhs, eq_lhs x = eq_rhs."""

    objective: np.ndarray
    ineq_lhs: np.ndarray
    ineq_rhs: np.ndarray
    eq_lhs: np.ndarray
    eq_rhs: np.ndarray
    sense: str = "minimize"

    @staticmethod
    def make(objective, ineq_lhs=None, ineq_rhs=None, eq_lhs=None, eq_rhs=None,
             sense: str = "minimize") -> "LpProblem":
        c = _as_vector(objective)
        d = c.shape[0]
        G = _as_matrix(ineq_lhs, d)
        g = _as_vector(ineq_rhs)
        E = _as_matrix(eq_lhs, d)
        e = _as_vector(eq_rhs)
        if sense not in ("minimize", "maximize"):
            raise LpDimensionError(f"unknown sense {sense!r}")
        if G.shape[1] != d or E.shape[1] != d:
            raise LpDimensionError("constraint matrices do not match objective length")
        if G.shape[0] != g.shape[0] or E.shape[0] != e.shape[0]:
            raise LpDimensionError("matrix row counts do not match rhs lengths")
        for arr in (c, G, g, E, e):
            if arr.size and not np.all(np.isfinite(arr)):
                raise LpDimensionError("problem data must be finite")
        return LpProblem(c, G, g, E, e, sense)


@dataclass(frozen=True)
class LpResult:
    """Outcome of lp_solve.

    status is one of "optimal", "infeasible", "unbounded".  For optimal
    results `point` is the minimizer and `value` the objective value; for
    unbounded results `point` carries an improving ray.  `dual_ineq`/`dual_eq`
    give multipliers (lambda <= 0 for a minimize problem) certifying the value
    via weak duality when status is optimal.
    """

    status: str
    point: np.ndarray | None = None
    value: float | None = None
    dual_ineq: np.ndarray | None = None
    dual_eq: np.ndarray | None = None


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _simplex(T: np.ndarray, c: np.ndarray, basis: np.ndarray,
             allowed: np.ndarray, iter_budget: list[int]):
    """Run Bland-rule simplex on tableau T (basis columns already identity).

    Returns ("optimal", None) or ("unbounded", entering_column_index).
    `allowed` masks columns eligible to enter.  iter_budget is a one-element
    mutable counter shared across phases.
    """
    m, ncols = T.shape[0], T.shape[1] - 1
    while True:
        if iter_budget[0] <= 0:
            raise LpStallError(MAX_ITERATIONS)
        iter_budget[0] -= 1
        red = c - c[basis] @ T[:, :ncols]
        cand = np.flatnonzero(allowed & (red < -TOL_LP))
        if cand.size == 0:
            return "optimal", None
        enter = int(cand[0])  # Bland: smallest eligible index
        col = T[:, enter]
        pos = np.flatnonzero(col > _TOL_PIVOT)
        if pos.size == 0:
            return "unbounded", enter
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + _TOL_PIVOT]
        leave = ties[np.argmin(basis[ties])]  # Bland: smallest basic variable
        _pivot(T, int(leave), enter)
        basis[int(leave)] = enter


class _StandardForm:
    """Standard-form encoding: min c.z, Az = b, z >= 0 with free x split."""

    def __init__(self, p: LpProblem):
        d = p.objective.shape[0]
        r = p.ineq_lhs.shape[0]
        s = p.eq_lhs.shape[0]
        self.d, self.r, self.s = d, r, s
        m = r + s
        n = 2 * d + r
        A = np.zeros((m, n))
        A[:r, :d] = p.ineq_lhs
        A[:r, d:2 * d] = -p.ineq_lhs
        A[:r, 2 * d:] = np.eye(r)
        A[r:, :d] = p.eq_lhs
        A[r:, d:2 * d] = -p.eq_lhs
        b = np.concatenate([p.ineq_rhs, p.eq_rhs])
        # Row scaling for conditioning, then sign flips so b >= 0.
        scale = np.maximum(np.abs(A).max(axis=1), np.abs(b))
        scale[scale < 1e-12] = 1.0
        A /= scale[:, None]
        b /= scale
        flip = np.where(b < 0, -1.0, 1.0)
        A *= flip[:, None]
        b *= flip
        self.A, self.b = A, b
        self.rowscale = flip / scale  # dual of scaled row i maps back via * rowscale
        sign = -1.0 if p.sense == "maximize" else 1.0
        self.c = np.concatenate([sign * p.objective, -sign * p.objective, np.zeros(r)])
        self.sign = sign

    def to_x(self, z: np.ndarray) -> np.ndarray:
        return z[: self.d] - z[self.d: 2 * self.d]


def lp_solve(p: LpProblem) -> LpResult:
    """Solve a dense LP; raises LpStallError past the iteration cap."""
    sf = _StandardForm(p)
    A, b, c = sf.A, sf.b, sf.c
    m, n = A.shape
    budget = [MAX_ITERATIONS]

    # Phase 1: artificial variables form the initial identity basis.
    T = np.hstack([A, np.eye(m), b[:, None]])
    c1 = np.concatenate([np.zeros(n), np.ones(m)])
    basis = np.arange(n, n + m)
    allowed = np.ones(n + m, dtype=bool)
    status, _ = _simplex(T, c1, basis, allowed, budget)
    phase1 = c1[basis] @ T[:, -1]
    if phase1 > 1e-8:
        return LpResult(status="infeasible")

    # Drive artificials out of the basis; rows that cannot pivot are redundant.
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n:
            row = T[i, :n]
            nz = np.flatnonzero(np.abs(row) > 1e-9)
            if nz.size:
                _pivot(T, i, int(nz[0]))
                basis[i] = int(nz[0])
            else:
                keep[i] = False
    T = np.hstack([T[keep, :n], T[keep, -1:]])
    basis = basis[keep]
    kept_rows = np.flatnonzero(keep)

    # Phase 2 on original objective.
    allowed2 = np.ones(n, dtype=bool)
    status, enter = _simplex(T, c, basis, allowed2, budget)
    if status == "unbounded":
        ray_z = np.zeros(n)
        ray_z[enter] = 1.0
        ray_z[basis] -= T[:, enter]
        ray = sf.to_x(ray_z)
        return LpResult(status="unbounded", point=ray)

    z = np.zeros(n)
    z[basis] = T[:, -1]
    x = sf.to_x(z)
    value = sf.sign * float(c @ z)

    # Recover duals for weak-duality certification (minimize orientation).
    dual_ineq = np.zeros(sf.r)
    dual_eq = np.zeros(sf.s)
    if m:
        try:
            y = np.linalg.solve(A[kept_rows][:, basis].T, c[basis])
            lam = np.zeros(m)
            lam[kept_rows] = y * sf.rowscale[kept_rows]
            dual_ineq = sf.sign * lam[: sf.r]
            dual_eq = sf.sign * lam[sf.r:]
        except np.linalg.LinAlgError:
            dual_ineq = dual_eq = None
    return LpResult(status="optimal", point=x, value=value,
                    dual_ineq=dual_ineq, dual_eq=dual_eq)


def lp_feasible(ineq_lhs, ineq_rhs, eq_lhs=None, eq_rhs=None):
    """Feasibility of {Gx <= g, Ex = e}; returns (bool, witness-or-None)."""
    G = np.asarray(ineq_lhs, dtype=float) if ineq_lhs is not None else np.zeros((0, 0))
    if G.ndim != 2:
        G = np.atleast_2d(G)
    d = G.shape[1]
    if d == 0 and eq_lhs is not None:
        E = np.atleast_2d(np.asarray(eq_lhs, dtype=float))
        d = E.shape[1]
    p = LpProblem.make(np.zeros(d), G if G.size else None, ineq_rhs,
                       eq_lhs, eq_rhs)
    res = lp_solve(p)
    if res.status == "optimal":
        return True, res.point
    return False, None
