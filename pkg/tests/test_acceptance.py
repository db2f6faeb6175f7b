"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Tolerances are stated inline next to each check.  The random-instance batch
is computed once and shared between the chain and dual-equivalence criteria.
"""

import math
import time

import numpy as np
import pytest

from subregkit import moduli as M
from subregkit.catalog import run_catalog
from subregkit.instances import generate, system_from_dict
from subregkit.polyhedra import LINF, Polyhedron, contains, distance, tangent_cone
from subregkit.system import residual, solution_set

from conftest import make_system


def _verdict(criterion: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} — {detail}"
    print(line)
    # also bypass pytest's capture so the verdicts show up in plain `pytest -v`
    import sys
    print(line, file=sys.__stdout__)
    assert ok, f"{criterion}: {detail}"


def _inv(v: float) -> float:
    return math.inf if v <= 0 else (0.0 if math.isinf(v) else 1.0 / v)


def _fixtures():
    return [
        make_system(1, 1, [[1, -1]], [0], name="E1"),
        make_system(2, 1, [[1, 0, -1]], [0], a_ineq=[[0, 1]], a_rhs=[0], name="E2"),
        make_system(1, 1, [[1, -1], [-1, -1]], [0, 0], name="E3"),
    ]


@pytest.fixture(scope="module")
def random_batch():
    """50 generated instances (nx<=3, ny<=2, rows<=6) analyzed in exact mode."""
    rng = np.random.default_rng(0)
    out = []
    t0 = time.time()
    for i in range(50):
        nx = int(rng.integers(1, 4))
        ny = int(rng.integers(1, 3))
        rows = int(rng.integers(1, 7))
        sysm = system_from_dict(generate(nx, ny, rows, seed=1000 + i))
        report, strong = M.analyze(sysm, M.AnalyzeConfig(n_samples=20_000, seed=i))
        out.append((sysm, report, strong))
    return out, time.time() - t0


def test_criterion_1_chain_on_fixtures():
    """Exact quantities pairwise within 1e-4; sampled 1/subreg within 5% of
    eta at 1e5 samples; headline 1.0 +/- 1e-3 for E1/E2; < 10 s each."""
    worst = 0.0
    for sysm in _fixtures():
        t0 = time.time()
        report, _ = M.analyze(sysm, M.AnalyzeConfig(n_samples=100_000))
        elapsed = time.time() - t0
        assert elapsed < 10.0, f"{sysm.name} took {elapsed:.1f}s"
        eta, tau, bcq = report.eta, report.tau, report.bcq_tau
        assert abs(eta - _inv(tau)) <= 1e-4, sysm.name
        assert abs(eta - _inv(bcq)) <= 1e-4, sysm.name
        assert abs(_inv(report.subreg_est) - eta) <= 0.05 * max(1.0, eta), sysm.name
        if sysm.name in ("E1", "E2"):
            for v in (eta, tau, bcq):
                assert v == pytest.approx(1.0, abs=1e-3), sysm.name
        worst = max(worst, abs(eta - _inv(tau)), abs(eta - _inv(bcq)))
    _verdict("criterion 1 (chain on fixtures, tol 1e-4 exact / 5% sampled)",
             True, f"worst exact-pairwise gap {worst:.2e}")


def test_criterion_2_chain_on_random_instances(random_batch):
    """|eta - 1/tau| <= 1e-3 on 50 random instances; sampled subreg within
    10% where nondegenerate; total runtime < 5 min."""
    batch, elapsed = random_batch
    worst = 0.0
    for sysm, report, _ in batch:
        eta, tau = report.eta, report.tau
        gap = abs(min(eta, M.ETA_CAP) - min(_inv(tau), M.ETA_CAP))
        assert gap <= 1e-3, sysm.name
        worst = max(worst, gap)
        if not report.degenerate:
            sub_gap = abs(_inv(report.subreg_est) - eta)
            assert sub_gap <= 0.10 * max(1.0, eta), sysm.name
    assert elapsed < 300.0, f"batch took {elapsed:.0f}s"
    _verdict("criterion 2 (chain on 50 random instances, tol 1e-3 / 10%)",
             True, f"worst eta-vs-1/tau gap {worst:.2e}, runtime {elapsed:.0f}s")


def test_criterion_3_dual_equivalence(random_batch):
    """Strong-BCQ infimum equals 1/eta within 1e-3 on fixtures and the
    random batch — an LP route independent of the tau computation."""
    batch, _ = random_batch
    systems = [(s, r.eta, r.bcq_tau) for s, r, _ in batch]
    for sysm in _fixtures():
        report, _ = M.analyze(sysm, M.AnalyzeConfig(n_samples=2_000))
        systems.append((sysm, report.eta, report.bcq_tau))
    worst = 0.0
    for sysm, eta, bcq in systems:
        gap = abs(min(eta, M.ETA_CAP) - min(_inv(bcq), M.ETA_CAP))
        assert gap <= 1e-3, sysm.name
        worst = max(worst, gap)
    _verdict("criterion 3 (dual BCQ equivalence, tol 1e-3)",
             True, f"worst |eta - 1/bcq| gap {worst:.2e} over {len(systems)} instances")


def test_criterion_4_strong_subregularity():
    """Singleton case: kernel condition, singleton flag, ssubreg in
    [0.95, 1.05]; non-singleton case: kernel false and the strong inclusion
    fails for eta in {0.1, 1, 10}."""
    e1, _, e3 = _fixtures()
    _, strong3 = M.analyze(e3, M.AnalyzeConfig(n_samples=20_000))
    assert strong3.singleton and strong3.kernel_trivial
    ssub = strong3.ssubreg_est
    assert 0.95 <= ssub <= 1.05, ssub
    assert not M.kernel_condition(e1)
    for eta in (0.1, 1.0, 10.0):
        assert not M.strong_inclusion_holds(e1, eta)
    _verdict("criterion 4 (strong subregularity, ssubreg tol 5%)",
             True, f"E3 ssubreg estimate {ssub:.4f}")


def test_criterion_5_failure_detection():
    """Parabola estimates diverge at least like 0.5/delta."""
    rep = run_catalog("parabola", [1e-2, 1e-3], n_samples=20_000, seed=0)
    e2, e3 = rep["subreg_estimates"]
    assert e2 >= 0.5 / 1e-2 and e3 >= 0.5 / 1e-3
    _verdict("criterion 5 (parabola divergence >= 0.5/delta)",
             True, f"estimates {e2:.3g} at 1e-2, {e3:.3g} at 1e-3")


def test_criterion_6_witness_suite():
    """Tangent-separation witnesses for 100 random polyhedral pairs at
    gamma = 0.99 with margin > 1e-9."""
    rng = np.random.default_rng(123)
    found = 0
    min_margin = math.inf
    while found < 100:
        dim = int(rng.integers(1, 4))
        m = int(rng.integers(1, 5))
        G = rng.uniform(-1, 1, size=(m, dim))
        g = rng.uniform(0, 1, size=m)
        omega = Polyhedron.make(dim, G, g)
        x = rng.uniform(-3, 3, size=dim)
        if contains(omega, x) or distance(omega, x, LINF) < 1e-6:
            continue
        _, margin = M.tangent_witness(omega, x, 0.99, LINF)
        assert margin > 1e-9
        min_margin = min(min_margin, margin)
        found += 1
    _verdict("criterion 6 (100 witnesses at gamma=0.99, margin > 1e-9)",
             True, f"smallest margin {min_margin:.3e}")


def test_criterion_7_invariant_suites():
    """Cross-module invariants: eta monotonicity, ratio homogeneity,
    residual/membership equivalence, V-rep round-trip — zero violations."""
    rng = np.random.default_rng(31)
    e1, e2, _ = _fixtures()

    # eta_holds monotone in eta (3-point probes)
    for sysm, x in ((e1, [0.0]), (e2, [0.0, 0.0])):
        res = [M.eta_holds(sysm, x, e) for e in (0.5, 1.0005, 2.0)]
        assert all(a or not b for a, b in zip(res, res[1:]))

    # degree-0 homogeneity of the tau ratio on random directions
    S = solution_set(e2).S
    T_S = tangent_cone(S, e2.xbar)
    T_A = tangent_cone(e2.A, e2.xbar)
    from subregkit.system import deriv_min_norm
    for _ in range(30):
        h = rng.normal(size=2)
        num = distance(T_S, h, LINF)
        den = deriv_min_norm(e2, e2.xbar, h) + distance(T_A, h, LINF)
        base = 0.0 if num <= 1e-9 else (math.inf if den <= 1e-12 else num / den)
        for lam in (0.5, 2.0, 10.0):
            num2 = distance(T_S, lam * h, LINF)
            den2 = deriv_min_norm(e2, e2.xbar, lam * h) + distance(T_A, lam * h, LINF)
            r2 = 0.0 if num2 <= 1e-9 else (math.inf if den2 <= 1e-12 else num2 / den2)
            assert r2 == pytest.approx(base, abs=1e-6)

    # residual vanishes exactly on the solution set
    for _ in range(100):
        x = rng.uniform(-2, 2, size=2)
        if contains(S, x, tol=1e-9):
            assert residual(e2, x) <= 1e-7
        else:
            assert residual(e2, x) > 0

    # V-rep round-trip via distance agreement on random probes
    from subregkit.polyhedra import enumerate_vrep, hrep_from_vrep
    checked = 0
    while checked < 15:
        dim = int(rng.integers(1, 4))
        G = rng.uniform(-1, 1, size=(int(rng.integers(1, 5)), dim))
        g = rng.uniform(0, 1, size=G.shape[0])
        P = Polyhedron.make(dim, G, g)
        vr = enumerate_vrep(P)
        if vr.is_empty:
            continue
        Q = hrep_from_vrep(vr, dim)
        for x in rng.uniform(-3, 3, size=(20, dim)):
            assert abs(distance(P, x, LINF) - distance(Q, x, LINF)) < 1e-6
        checked += 1

    _verdict("criterion 7 (invariant suites, stated tolerances)",
             True, "monotonicity, homogeneity, residual equivalence, "
                   "V-rep round-trip all clean")
