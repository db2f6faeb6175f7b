"""Polyhedral sets in H-representation, polyhedral norms, and cone calculus.

Everything stays linear-programmable: sets are {x : Gx <= g, Ex = e}, norms
are linf/l1 so balls are polytopes, and distances / memberships / projections
reduce to small dense LPs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .lp import LpProblem, lp_feasible, lp_solve

# Tolerance for deciding active rows in tangent/normal cones: the main
# numerical knob of the exact path.
TOL_ACTIVE = 1e-7
VREP_DIM_CAP = 6
_COMBO_CAP = 500_000


class PolyhedronError(Exception):
    pass


class DimensionMismatchError(PolyhedronError):
    pass


class EmptySetError(PolyhedronError):
    pass


class NotInSetError(PolyhedronError):
    pass


class DimCapError(PolyhedronError):
    """Exact enumeration refused; callers fall back to sampling."""


def _rows(m, d: int) -> np.ndarray:
    if m is None:
        return np.zeros((0, d))
    a = np.asarray(m, dtype=float)
    if a.size == 0:
        return np.zeros((0, d))
    return np.atleast_2d(a)


def _vec(v) -> np.ndarray:
    if v is None:
        return np.zeros(0)
    return np.atleast_1d(np.asarray(v, dtype=float))


@dataclass(frozen=True)
class Polyhedron:
    """{x in R^dim : ineq_lhs x <= ineq_rhs, eq_lhs x = eq_rhs}.

    Zero rows denote the whole space.  Treated as immutable; emptiness is
    decided lazily by LP and cached.
    """

    dim: int
    ineq_lhs: np.ndarray
    ineq_rhs: np.ndarray
    eq_lhs: np.ndarray
    eq_rhs: np.ndarray
    _empty_cache: list = field(default_factory=list, compare=False, repr=False)

    @staticmethod
    def make(dim: int, ineq_lhs=None, ineq_rhs=None, eq_lhs=None, eq_rhs=None) -> "Polyhedron":
        if dim < 1:
            raise DimensionMismatchError("dim must be positive")
        G = _rows(ineq_lhs, dim)
        g = _vec(ineq_rhs)
        E = _rows(eq_lhs, dim)
        e = _vec(eq_rhs)
        if G.shape[1] != dim or E.shape[1] != dim:
            raise DimensionMismatchError("matrix column counts must equal dim")
        if G.shape[0] != g.shape[0] or E.shape[0] != e.shape[0]:
            raise DimensionMismatchError("row counts must match rhs lengths")
        return Polyhedron(dim, G, g, E, e)

    @staticmethod
    def whole_space(dim: int) -> "Polyhedron":
        return Polyhedron.make(dim)

    @property
    def n_rows(self) -> int:
        return self.ineq_lhs.shape[0] + self.eq_lhs.shape[0]

    def is_cone(self, tol: float = 1e-12) -> bool:
        return (np.all(np.abs(self.ineq_rhs) <= tol)
                and np.all(np.abs(self.eq_rhs) <= tol))

    def is_empty(self) -> bool:
        if not self._empty_cache:
            ok, _ = lp_feasible(self.ineq_lhs, self.ineq_rhs, self.eq_lhs, self.eq_rhs)
            self._empty_cache.append(not ok)
        return self._empty_cache[0]

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim != self.dim:
            raise DimensionMismatchError("dims differ")
        return Polyhedron.make(
            self.dim,
            np.vstack([self.ineq_lhs, other.ineq_lhs]),
            np.concatenate([self.ineq_rhs, other.ineq_rhs]),
            np.vstack([self.eq_lhs, other.eq_lhs]),
            np.concatenate([self.eq_rhs, other.eq_rhs]),
        )

    def translate(self, v) -> "Polyhedron":
        v = _vec(v)
        return Polyhedron.make(
            self.dim,
            self.ineq_lhs, self.ineq_rhs + self.ineq_lhs @ v,
            self.eq_lhs, self.eq_rhs + self.eq_lhs @ v,
        )

    def recession_cone(self) -> "Polyhedron":
        return Polyhedron.make(
            self.dim,
            self.ineq_lhs, np.zeros(self.ineq_lhs.shape[0]),
            self.eq_lhs, np.zeros(self.eq_lhs.shape[0]),
        )


@dataclass(frozen=True)
class PolyNorm:
    """A polyhedral norm (linf or l1); unit balls are boxes/cross-polytopes."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("linf", "l1"):
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @property
    def dual(self) -> "PolyNorm":
        return PolyNorm("l1" if self.kind == "linf" else "linf")

    def value(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(np.abs(u).max()) if self.kind == "linf" else float(np.abs(u).sum())

    def value_many(self, U: np.ndarray) -> np.ndarray:
        return np.abs(U).max(axis=1) if self.kind == "linf" else np.abs(U).sum(axis=1)

    def ball_hrep(self, dim: int, radius: float = 1.0) -> Polyhedron:
        if self.kind == "linf":
            G = np.vstack([np.eye(dim), -np.eye(dim)])
            g = np.full(2 * dim, radius)
        else:
            signs = np.array(list(itertools.product((1.0, -1.0), repeat=dim)))
            G = signs
            g = np.full(signs.shape[0], radius)
        return Polyhedron.make(dim, G, g)


LINF = PolyNorm("linf")
L1 = PolyNorm("l1")


@dataclass
class ConeVRep:
    """Finite generators: conv(vertices) + cone(rays)."""

    vertices: list
    rays: list

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.rays


# ---------------------------------------------------------------------------
# membership / distance / support


def contains(P: Polyhedron, x, tol: float = TOL_ACTIVE) -> bool:
    x = _vec(x)
    if x.shape[0] != P.dim:
        raise DimensionMismatchError("point dimension mismatch")
    if P.ineq_lhs.shape[0] and np.any(P.ineq_lhs @ x - P.ineq_rhs > tol):
        return False
    if P.eq_lhs.shape[0] and np.any(np.abs(P.eq_lhs @ x - P.eq_rhs) > tol):
        return False
    return True


def _norm_epigraph_lp(P: Polyhedron, x: np.ndarray, nm: PolyNorm):
    """LP data for min ||x - p|| over p in P; variables (p, aux)."""
    d = P.dim
    r = P.ineq_lhs.shape[0]
    if nm.kind == "linf":
        naux = 1
        obj = np.concatenate([np.zeros(d), [1.0]])
    else:
        naux = d
        obj = np.concatenate([np.zeros(d), np.ones(d)])
    n = d + naux
    G_rows = []
    g_rhs = []
    if r:
        G_rows.append(np.hstack([P.ineq_lhs, np.zeros((r, naux))]))
        g_rhs.append(P.ineq_rhs)
    eye = np.eye(d)
    if nm.kind == "linf":
        aux = np.ones((d, 1))
    else:
        aux = np.eye(d)
    # x_i - p_i <= aux_i  and  p_i - x_i <= aux_i
    G_rows.append(np.hstack([-eye, -aux]))
    g_rhs.append(-x)
    G_rows.append(np.hstack([eye, -aux]))
    g_rhs.append(x)
    G = np.vstack(G_rows)
    g = np.concatenate(g_rhs)
    E = np.hstack([P.eq_lhs, np.zeros((P.eq_lhs.shape[0], naux))]) if P.eq_lhs.shape[0] else None
    e = P.eq_rhs if P.eq_lhs.shape[0] else None
    return LpProblem.make(obj, G, g, E, e), n


def project(P: Polyhedron, x, nm: PolyNorm):
    """Nearest point of P to x in norm nm; returns (distance, point)."""
    x = _vec(x)
    if x.shape[0] != P.dim:
        raise DimensionMismatchError("point dimension mismatch")
    prob, _ = _norm_epigraph_lp(P, x, nm)
    res = lp_solve(prob)
    if res.status == "infeasible":
        raise EmptySetError("distance to an empty polyhedron")
    assert res.status == "optimal"
    return max(res.value, 0.0), res.point[: P.dim]


def distance(P: Polyhedron, x, nm: PolyNorm) -> float:
    return project(P, x, nm)[0]


def support_value(P: Polyhedron, d) -> float:
    """sup of d . p over P; +inf when unbounded, EmptySetError when empty."""
    d = _vec(d)
    res = lp_solve(LpProblem.make(d, P.ineq_lhs, P.ineq_rhs, P.eq_lhs, P.eq_rhs,
                                  sense="maximize"))
    if res.status == "infeasible":
        raise EmptySetError("support of an empty polyhedron")
    if res.status == "unbounded":
        return float("inf")
    return res.value


# ---------------------------------------------------------------------------
# cones


def tangent_cone(P: Polyhedron, x, tol_active: float = TOL_ACTIVE) -> Polyhedron:
    """Contingent cone of a polyhedron at x: active rows made homogeneous."""
    x = _vec(x)
    if not contains(P, x, tol_active):
        raise NotInSetError("tangent cone requested at a point outside the set")
    act = np.abs(P.ineq_lhs @ x - P.ineq_rhs) <= tol_active if P.ineq_lhs.shape[0] else np.zeros(0, bool)
    G = P.ineq_lhs[act]
    return Polyhedron.make(P.dim, G, np.zeros(G.shape[0]),
                           P.eq_lhs, np.zeros(P.eq_lhs.shape[0]))


def normal_cone_generators(P: Polyhedron, x, tol_active: float = TOL_ACTIVE) -> ConeVRep:
    """Generators of the normal cone: active row normals, +/- equality normals."""
    x = _vec(x)
    if not contains(P, x, tol_active):
        raise NotInSetError("normal cone requested at a point outside the set")
    rays = []
    if P.ineq_lhs.shape[0]:
        act = np.abs(P.ineq_lhs @ x - P.ineq_rhs) <= tol_active
        for row in P.ineq_lhs[act]:
            nrm = np.abs(row).max()
            if nrm > 1e-12:
                rays.append(row / nrm)
    for row in P.eq_lhs:
        nrm = np.abs(row).max()
        if nrm > 1e-12:
            rays.append(row / nrm)
            rays.append(-row / nrm)
    return ConeVRep(vertices=[np.zeros(P.dim)], rays=rays)


def sum_membership(u, C: Polyhedron, nm: PolyNorm, r: float) -> bool:
    """u in C + r * unit ball of nm, decided by one feasibility LP."""
    u = _vec(u)
    if u.shape[0] != C.dim:
        raise DimensionMismatchError("point dimension mismatch")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    d = C.dim
    naux = 0 if nm.kind == "linf" else d
    n = d + naux  # variables: b (ball part), plus |b| bounds for l1
    G_rows, g_rhs = [], []
    if C.ineq_lhs.shape[0]:
        # u - b in C  =>  -G b <= rhs - G u
        G_rows.append(np.hstack([-C.ineq_lhs, np.zeros((C.ineq_lhs.shape[0], naux))]))
        g_rhs.append(C.ineq_rhs - C.ineq_lhs @ u)
    eye = np.eye(d)
    if nm.kind == "linf":
        G_rows.append(np.hstack([eye]))
        g_rhs.append(np.full(d, r))
        G_rows.append(np.hstack([-eye]))
        g_rhs.append(np.full(d, r))
    else:
        G_rows.append(np.hstack([eye, -eye]))
        g_rhs.append(np.zeros(d))
        G_rows.append(np.hstack([-eye, -eye]))
        g_rhs.append(np.zeros(d))
        G_rows.append(np.concatenate([np.zeros(d), np.ones(d)])[None, :])
        g_rhs.append(np.array([r]))
    G = np.vstack([blk if blk.shape[1] == n else np.hstack([blk, np.zeros((blk.shape[0], n - blk.shape[1]))])
                   for blk in G_rows])
    g = np.concatenate(g_rhs)
    E = e = None
    if C.eq_lhs.shape[0]:
        E = np.hstack([-C.eq_lhs, np.zeros((C.eq_lhs.shape[0], naux))])
        e = C.eq_rhs - C.eq_lhs @ u
    ok, _ = lp_feasible(G, g, E, e)
    return ok


# ---------------------------------------------------------------------------
# V-representation


def _nullspace(M: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    if M.shape[0] == 0:
        return np.eye(M.shape[1])
    u, s, vt = np.linalg.svd(M)
    rank = int(np.sum(s > rtol * max(M.shape) * (s[0] if s.size else 1.0)))
    return vt[rank:].T


def _dedupe(points: list, tol: float = 1e-7) -> list:
    out = []
    for p in points:
        if not any(np.abs(p - q).max() <= tol for q in out):
            out.append(p)
    return out


def enumerate_vrep(P: Polyhedron, dim_cap: int = VREP_DIM_CAP) -> ConeVRep:
    """Complete vertex and extreme-ray enumeration for low dimensions.

    Polyhedra with a lineality space are reduced to a pointed polyhedron on
    the orthogonal complement; the lineality basis is emitted as +/- ray
    pairs, and 'vertices' are then minimal-face points.
    """
    d = P.dim
    if d > dim_cap:
        raise DimCapError(f"dimension {d} above V-rep cap {dim_cap}")
    if P.is_empty():
        return ConeVRep([], [])
    M = np.vstack([P.ineq_lhs, P.eq_lhs])
    lin = _nullspace(M)
    if lin.shape[1] > 0:
        comp = _nullspace(lin.T)
        if comp.shape[1] == 0:
            return ConeVRep([np.zeros(d)], [c for b in lin.T for c in (b, -b)])
        sub = Polyhedron.make(comp.shape[1],
                              P.ineq_lhs @ comp, P.ineq_rhs,
                              P.eq_lhs @ comp, P.eq_rhs)
        inner = enumerate_vrep(sub, dim_cap=dim_cap)
        verts = [comp @ v for v in inner.vertices]
        rays = [comp @ r for r in inner.rays]
        rays += [s * lin[:, j] for j in range(lin.shape[1]) for s in (1.0, -1.0)]
        return ConeVRep(verts, rays)

    rows = np.vstack([P.ineq_lhs, P.eq_lhs])
    rhs = np.concatenate([P.ineq_rhs, P.eq_rhs])
    m = rows.shape[0]
    if comb(m, d) > _COMBO_CAP or comb(m, max(d - 1, 0)) > _COMBO_CAP:
        raise DimCapError("too many rows for combinatorial enumeration")

    verts = []
    for combo in itertools.combinations(range(m), d):
        A = rows[list(combo)]
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        x = np.linalg.solve(A, rhs[list(combo)])
        if np.abs(x).max() > 1e12:
            continue
        if contains(P, x, tol=1e-7):
            verts.append(x)
    verts = _dedupe(verts)

    rays = []
    if d == 1:
        candidates = [np.array([1.0]), np.array([-1.0])]
    else:
        candidates = []
        for combo in itertools.combinations(range(m), d - 1):
            ns = _nullspace(rows[list(combo)])
            if ns.shape[1] != 1:
                continue
            candidates.append(ns[:, 0])
            candidates.append(-ns[:, 0])
    for c in candidates:
        c = c / np.abs(c).max()
        if P.ineq_lhs.shape[0] and np.any(P.ineq_lhs @ c > 1e-9):
            continue
        if P.eq_lhs.shape[0] and np.any(np.abs(P.eq_lhs @ c) > 1e-9):
            continue
        rays.append(c)
    rays = _dedupe(rays)
    return ConeVRep(verts, rays)


def hrep_from_vrep(vrep: ConeVRep, dim: int) -> Polyhedron:
    """Rebuild an H-representation of conv(vertices) + cone(rays) (small dim)."""
    if vrep.is_empty:
        return Polyhedron.make(dim, np.zeros((1, dim)), [-1.0])
    if not vrep.vertices:
        raise PolyhedronError("V-rep without vertices is not supported")
    v0 = np.asarray(vrep.vertices[0], dtype=float)
    span = [np.asarray(v, float) - v0 for v in vrep.vertices[1:]]
    span += [np.asarray(r, float) for r in vrep.rays]
    span_m = np.array(span) if span else np.zeros((0, dim))
    normal = _nullspace(span_m) if span else np.eye(dim)
    hull = _nullspace(normal.T)
    eq_lhs = normal.T
    eq_rhs = normal.T @ v0
    k = hull.shape[1]
    if k == 0:
        return Polyhedron.make(dim, eq_lhs=eq_lhs, eq_rhs=eq_rhs)

    # Facet enumeration on local coordinates of the affine hull.
    H = [np.concatenate([hull.T @ (np.asarray(v, float) - v0), [1.0]]) for v in vrep.vertices]
    H += [np.concatenate([hull.T @ np.asarray(r, float), [0.0]]) for r in vrep.rays]
    H = np.array(H)
    n_g = H.shape[0]
    if comb(n_g, k) > _COMBO_CAP:
        raise DimCapError("too many generators for facet enumeration")
    facets = []
    for combo in itertools.combinations(range(n_g), k):
        ns = _nullspace(H[list(combo)])
        if ns.shape[1] != 1:
            continue
        f = ns[:, 0]
        vals = H @ f
        if np.all(vals <= 1e-9):
            pass
        elif np.all(vals >= -1e-9):
            f = -f
        else:
            continue
        a = f[:k]
        if np.abs(a).max() < 1e-9:
            continue  # trivial row 0 <= const
        f = f / np.abs(a).max()
        facets.append(f)
    facets = _dedupe(facets)
    if not facets:
        return Polyhedron.make(dim, eq_lhs=eq_lhs, eq_rhs=eq_rhs)
    F = np.array(facets)
    a_loc, b_loc = F[:, :k], -F[:, k]
    G = a_loc @ hull.T
    g = b_loc + a_loc @ (hull.T @ v0)
    return Polyhedron.make(dim, G, g, eq_lhs, eq_rhs)


# ---------------------------------------------------------------------------
# projection (Fourier-Motzkin) and redundancy removal


def _clean_rows(G: np.ndarray, g: np.ndarray):
    """Normalize row scaling, drop trivial rows, dedupe."""
    keep_G, keep_g = [], []
    seen = set()
    infeasible = False
    for a, b in zip(G, g):
        nrm = np.abs(a).max() if a.size else 0.0
        if nrm <= 1e-11:
            if b < -1e-9:
                infeasible = True
            continue
        scale = max(nrm, abs(b))
        a, b = a / scale, b / scale
        key = tuple(np.round(a, 9)) + (round(b, 9),)
        if key in seen:
            continue
        seen.add(key)
        keep_G.append(a)
        keep_g.append(b)
    if infeasible:
        d = G.shape[1]
        keep_G.append(np.zeros(d))
        keep_g.append(-1.0)
    if keep_G:
        return np.array(keep_G), np.array(keep_g)
    return np.zeros((0, G.shape[1])), np.zeros(0)


def reduce_redundancy(P: Polyhedron) -> Polyhedron:
    """Drop inequality rows implied by the remaining rows (one LP per row)."""
    G, g = _clean_rows(P.ineq_lhs, P.ineq_rhs)
    keep = np.ones(G.shape[0], dtype=bool)
    for i in range(G.shape[0]):
        mask = keep.copy()
        mask[i] = False
        others_G = np.vstack([G[mask], G[i][None, :]])
        others_g = np.concatenate([g[mask], [g[i] + 1.0]])
        res = lp_solve(LpProblem.make(G[i], others_G, others_g,
                                      P.eq_lhs if P.eq_lhs.shape[0] else None,
                                      P.eq_rhs if P.eq_lhs.shape[0] else None,
                                      sense="maximize"))
        if res.status == "optimal" and res.value <= g[i] + 1e-9:
            keep[i] = False
        if res.status == "infeasible":
            break  # empty set: keep remaining rows as-is
    return Polyhedron.make(P.dim, G[keep], g[keep], P.eq_lhs, P.eq_rhs)


def eliminate(P: Polyhedron, drop: list, prune_threshold: int = 60) -> Polyhedron:
    """Project out the coordinates in `drop` (Fourier-Motzkin with equality
    substitution first); returns a polyhedron over the remaining coordinates
    in original order."""
    drop = sorted(set(int(i) for i in drop))
    G, g = P.ineq_lhs.copy(), P.ineq_rhs.copy()
    E, e = P.eq_lhs.copy(), P.eq_rhs.copy()
    remaining = [i for i in range(P.dim) if i not in drop]
    todo = list(drop)

    # Gaussian substitution via equality rows where possible.
    for var in list(todo):
        if E.shape[0] == 0:
            break
        col = np.abs(E[:, var])
        if col.size == 0 or col.max() <= 1e-9:
            continue
        piv = int(np.argmax(col))
        prow, prhs = E[piv], e[piv]
        coef = prow[var]
        for M, rhs in ((G, g), (E, e)):
            for i in range(M.shape[0]):
                if M is E and i == piv:
                    continue
                f = M[i, var] / coef
                if abs(f) > 0:
                    M[i] -= f * prow
                    rhs[i] -= f * prhs
        E = np.delete(E, piv, axis=0)
        e = np.delete(e, piv)
        G[:, var] = 0.0
        todo.remove(var)

    for var in todo:
        col = G[:, var] if G.shape[0] else np.zeros(0)
        pos = np.flatnonzero(col > 1e-11)
        neg = np.flatnonzero(col < -1e-11)
        zero = np.flatnonzero(np.abs(col) <= 1e-11)
        new_G = [G[zero]]
        new_g = [g[zero]]
        for i in pos:
            for j in neg:
                lam, mu = G[i, var], -G[j, var]
                new_G.append((mu * G[i] + lam * G[j])[None, :])
                new_g.append(np.array([mu * g[i] + lam * g[j]]))
        G = np.vstack(new_G) if new_G else np.zeros((0, P.dim))
        g = np.concatenate(new_g) if new_g else np.zeros(0)
        G[:, var] = 0.0
        G, g = _clean_rows(G, g)
        if G.shape[0] > prune_threshold:
            pruned = reduce_redundancy(Polyhedron.make(P.dim, G, g, E, e))
            G, g = pruned.ineq_lhs, pruned.ineq_rhs

    return Polyhedron.make(len(remaining),
                           G[:, remaining], g,
                           E[:, remaining] if E.shape[0] else None,
                           e if E.shape[0] else None)


def minkowski_sum_hrep(P: Polyhedron, Q: Polyhedron, prune: bool = True) -> Polyhedron:
    """H-representation of P + Q via projection of {(w,b): w-b in P, b in Q}."""
    if P.dim != Q.dim:
        raise DimensionMismatchError("dims differ")
    d = P.dim
    G_rows, g_rhs, E_rows, e_rhs = [], [], [], []
    if P.ineq_lhs.shape[0]:
        G_rows.append(np.hstack([P.ineq_lhs, -P.ineq_lhs]))
        g_rhs.append(P.ineq_rhs)
    if Q.ineq_lhs.shape[0]:
        G_rows.append(np.hstack([np.zeros_like(Q.ineq_lhs), Q.ineq_lhs]))
        g_rhs.append(Q.ineq_rhs)
    if P.eq_lhs.shape[0]:
        E_rows.append(np.hstack([P.eq_lhs, -P.eq_lhs]))
        e_rhs.append(P.eq_rhs)
    if Q.eq_lhs.shape[0]:
        E_rows.append(np.hstack([np.zeros_like(Q.eq_lhs), Q.eq_lhs]))
        e_rhs.append(Q.eq_rhs)
    lifted = Polyhedron.make(
        2 * d,
        np.vstack(G_rows) if G_rows else None,
        np.concatenate(g_rhs) if g_rhs else None,
        np.vstack(E_rows) if E_rows else None,
        np.concatenate(e_rhs) if e_rhs else None,
    )
    out = eliminate(lifted, list(range(d, 2 * d)))
    if prune:
        out = reduce_redundancy(out)
    return out


# ---------------------------------------------------------------------------
# piecewise-linear distance forms for fast sampling


def distance_dual_form(P: Polyhedron, nm: PolyNorm, dim_cap: int = VREP_DIM_CAP + 1):
    """Return (G, c) with d(x, P) = max(G x - c) pointwise (row (0,0) included).

    Rows are the vertices of {(g, c): ||g||_* <= 1, g.v <= c for vertices v,
    g.r <= 0 for rays r}; requires a V-representation of P.
    """
    vrep = enumerate_vrep(P)
    if vrep.is_empty:
        raise EmptySetError("distance form of an empty polyhedron")
    d = P.dim
    ball = nm.dual.ball_hrep(d)
    rows = [np.hstack([ball.ineq_lhs, np.zeros((ball.ineq_lhs.shape[0], 1))])]
    rhs = [ball.ineq_rhs]
    for v in vrep.vertices:
        rows.append(np.concatenate([np.asarray(v, float), [-1.0]])[None, :])
        rhs.append(np.zeros(1))
    for r in vrep.rays:
        rows.append(np.concatenate([np.asarray(r, float), [0.0]])[None, :])
        rhs.append(np.zeros(1))
    D = Polyhedron.make(d + 1, np.vstack(rows), np.concatenate(rhs))
    dv = enumerate_vrep(D, dim_cap=dim_cap)
    if not dv.vertices:
        raise PolyhedronError("distance dual polytope has no vertices")
    V = np.array(dv.vertices)
    G = np.vstack([V[:, :d], np.zeros((1, d))])
    c = np.concatenate([V[:, d], [0.0]])
    return G, c
