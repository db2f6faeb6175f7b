"""Analytic catalog: hand-picked systems with closed-form oracles.

These entries bypass the LP machinery entirely; residuals and distances to
the solution set are evaluated from closed forms, so they can exercise
non-polyhedral behaviour (notably the parabola, where the subregularity
modulus is infinite and the sampled estimates must diverge like 1/delta).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class UnknownEntryError(Exception):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    residual_oracle: Callable[[float], float]   # d(ybar, F(x)) + d(x, A)
    distance_to_S_oracle: Callable[[float], float]
    expected: str                               # "subregular" | "not_subregular"
    probes: tuple                               # ((x, residual, distance), ...)
    note: str = ""

    def check_probes(self, tol: float = 1e-12) -> bool:
        return all(
            abs(self.residual_oracle(x) - r) <= tol
            and abs(self.distance_to_S_oracle(x) - d) <= tol
            for x, r, d in self.probes)


# F(x) = [x^2, inf), A = R, ybar = 0: S = {0} but the residual x^2 vanishes
# faster than d(x, S) = |x|, so no finite modulus exists.
_PARABOLA = CatalogEntry(
    id="parabola",
    residual_oracle=lambda x: x * x,
    distance_to_S_oracle=lambda x: abs(x),
    expected="not_subregular",
    probes=((0.5, 0.25, 0.5), (-0.1, 0.01, 0.1), (2.0, 4.0, 2.0)),
    note="ratio 1/|x| diverges as x -> 0",
)

# F(x) = [x, inf), A = R: the analytic twin of the halfline fixture.
_HALFLINE = CatalogEntry(
    id="halfline",
    residual_oracle=lambda x: max(x, 0.0),
    distance_to_S_oracle=lambda x: max(x, 0.0),
    expected="subregular",
    probes=((0.4, 0.4, 0.4), (-1.0, 0.0, 0.0), (2.0, 2.0, 2.0)),
)

# F(x) = [|x|, inf), A = R: singleton solution set, strongly subregular.
_VEE = CatalogEntry(
    id="vee",
    residual_oracle=lambda x: abs(x),
    distance_to_S_oracle=lambda x: abs(x),
    expected="subregular",
    probes=((0.5, 0.5, 0.5), (-0.25, 0.25, 0.25), (3.0, 3.0, 3.0)),
)

ENTRIES = {e.id: e for e in (_PARABOLA, _HALFLINE, _VEE)}


def estimate_entry(entry: CatalogEntry, delta: float, n_samples: int = 20_000,
                   seed: int = 0) -> float:
    """Sampled sup of d(x,S)/residual over [-delta, delta] (xbar = 0)."""
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-delta, delta, size=n_samples)
    # deterministic boundary probes so the estimate never misses the radius
    xs = np.concatenate([xs, [delta, -delta, 0.5 * delta, -0.5 * delta]])
    best = 0.0
    for x in xs:
        r = entry.residual_oracle(float(x))
        d = entry.distance_to_S_oracle(float(x))
        if d <= 1e-15:
            continue
        if r <= 1e-300:
            return float("inf")
        best = max(best, d / r)
    return best


def run_catalog(entry_id: str, delta_schedule, n_samples: int = 20_000,
                seed: int = 0) -> dict:
    """Sampled subregularity estimates per delta for one catalog entry."""
    if entry_id not in ENTRIES:
        raise UnknownEntryError(f"unknown catalog id {entry_id!r}; "
                                f"known: {sorted(ENTRIES)}")
    entry = ENTRIES[entry_id]
    if not entry.check_probes():
        raise AssertionError(f"catalog entry {entry_id} fails its pinned probes")
    deltas = list(delta_schedule)
    estimates = [estimate_entry(entry, d, n_samples, seed) for d in deltas]
    return {
        "id": entry.id,
        "expected": entry.expected,
        "delta_schedule": deltas,
        "subreg_estimates": estimates,
        "seed": seed,
        "note": entry.note,
    }
