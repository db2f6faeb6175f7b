"""Instance files, the random generator, and report emission.

Instances are JSON: matrices for the graph of F over (x, y) and for the
constraint set A over x, the reference pair, and a norm tag.  Reports are
emitted as JSON (numbers round-trip bit-for-bit) or a fixed-width text table.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import tempfile

import numpy as np

from . import __version__
from .polyhedra import L1, LINF, Polyhedron
from .system import ConstraintSystem, InvalidInstanceError

_NORMS = {"linf": LINF, "l1": L1}


class InstanceFormatError(Exception):
    """The instance file is malformed (bad JSON, shapes, or fields)."""


def _matrix(data, key: str, ncols: int, nrows_key: str | None = None):
    raw = data.get(key)
    if raw is None:
        return np.zeros((0, ncols))
    if not isinstance(raw, list):
        raise InstanceFormatError(f"field {key!r} must be a list of rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != ncols:
            raise InstanceFormatError(
                f"field {key!r} row {i} must have length {ncols}")
        rows.append([float(v) for v in row])
    return np.array(rows) if rows else np.zeros((0, ncols))


def _vector(data, key: str, n: int | None = None):
    raw = data.get(key)
    if raw is None:
        return np.zeros(n if n is not None else 0)
    v = np.atleast_1d(np.asarray(raw, dtype=float))
    if n is not None and v.shape[0] != n:
        raise InstanceFormatError(f"field {key!r} must have length {n}")
    return v


def instance_to_dict(name, nx, ny, graph: Polyhedron, A: Polyhedron,
                     xbar, ybar, norm: str = "linf") -> dict:
    return {
        "name": name,
        "nx": int(nx),
        "ny": int(ny),
        "graph_ineq": np.asarray(graph.ineq_lhs).tolist(),
        "graph_rhs": np.asarray(graph.ineq_rhs).tolist(),
        "graph_eq": np.asarray(graph.eq_lhs).tolist(),
        "graph_eq_rhs": np.asarray(graph.eq_rhs).tolist(),
        "A_ineq": np.asarray(A.ineq_lhs).tolist(),
        "A_rhs": np.asarray(A.ineq_rhs).tolist(),
        "A_eq": np.asarray(A.eq_lhs).tolist(),
        "A_eq_rhs": np.asarray(A.eq_rhs).tolist(),
        "xbar": np.atleast_1d(np.asarray(xbar, float)).tolist(),
        "ybar": np.atleast_1d(np.asarray(ybar, float)).tolist(),
        "norm": norm,
    }


def system_from_dict(data: dict, norm_override: str | None = None) -> ConstraintSystem:
    for key in ("nx", "ny"):
        if key not in data or int(data[key]) < 1:
            raise InstanceFormatError(f"field {key!r} missing or < 1")
    nx, ny = int(data["nx"]), int(data["ny"])
    norm = norm_override or data.get("norm", "linf")
    if norm not in _NORMS:
        raise InstanceFormatError(f"unknown norm {norm!r}")
    graph = Polyhedron.make(
        nx + ny,
        _matrix(data, "graph_ineq", nx + ny), _vector(data, "graph_rhs"),
        _matrix(data, "graph_eq", nx + ny), _vector(data, "graph_eq_rhs"))
    A = Polyhedron.make(
        nx,
        _matrix(data, "A_ineq", nx), _vector(data, "A_rhs"),
        _matrix(data, "A_eq", nx), _vector(data, "A_eq_rhs"))
    if graph.ineq_lhs.shape[0] != graph.ineq_rhs.shape[0]:
        raise InstanceFormatError("graph_ineq/graph_rhs row counts differ")
    xbar = _vector(data, "xbar", nx)
    ybar = _vector(data, "ybar", ny)
    _check_reference(graph, A, nx, xbar, ybar)
    return ConstraintSystem.make(nx, ny, graph, A, xbar, ybar,
                                 norm_x=_NORMS[norm], norm_y=_NORMS[norm],
                                 name=str(data.get("name", "")))


def _check_reference(graph, A, nx, xbar, ybar):
    """Name the first violated row so error messages are actionable."""
    pt = np.concatenate([xbar, ybar])
    for label, P, z in (("graph", graph, pt), ("A", A, xbar)):
        if P.ineq_lhs.shape[0]:
            resid = P.ineq_lhs @ z - P.ineq_rhs
            bad = np.flatnonzero(resid > 1e-7)
            if bad.size:
                raise InvalidInstanceError(
                    f"reference point violates {label} inequality row {bad[0]} "
                    f"by {resid[bad[0]]:.3g}")
        if P.eq_lhs.shape[0]:
            resid = np.abs(P.eq_lhs @ z - P.eq_rhs)
            bad = np.flatnonzero(resid > 1e-7)
            if bad.size:
                raise InvalidInstanceError(
                    f"reference point violates {label} equality row {bad[0]} "
                    f"by {resid[bad[0]]:.3g}")


def load_instance(path: str, norm_override: str | None = None) -> ConstraintSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{path}: top level must be a JSON object")
    return system_from_dict(data, norm_override)


def generate(nx: int, ny: int, rows: int, seed: int) -> dict:
    """Random feasible instance with (xbar, ybar) = (0, 0); deterministic per
    seed.  Entries lie in [-2, 2]; each rhs is shifted nonnegative plus a
    slack of 0 or 0.3, so the reference point satisfies every row.
    """
    if nx < 1 or ny < 1 or rows < 1:
        raise ValueError("dims and rows must be at least 1")
    rng = np.random.default_rng(seed)
    n_graph = max(1, rows - rows // 3)
    n_a = rows - n_graph
    G = rng.uniform(-2.0, 2.0, size=(n_graph, nx + ny))
    g = np.maximum(rng.uniform(-2.0, 2.0, size=n_graph), 0.0) \
        + rng.choice([0.0, 0.3], size=n_graph)
    graph = Polyhedron.make(nx + ny, G, g)
    if n_a:
        Am = rng.uniform(-2.0, 2.0, size=(n_a, nx))
        a = np.maximum(rng.uniform(-2.0, 2.0, size=n_a), 0.0) \
            + rng.choice([0.0, 0.3], size=n_a)
        A = Polyhedron.make(nx, Am, a)
    else:
        A = Polyhedron.make(nx, None, None)
    return instance_to_dict(f"random-{seed}", nx, ny, graph, A,
                            np.zeros(nx), np.zeros(ny))


def write_json_atomic(obj, path: str) -> None:
    """Serialize to a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pyify(obj):
    """Convert numpy scalars/arrays to plain Python for JSON emission."""
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {k: _pyify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_pyify(v) for v in obj]
    return obj


def report_to_dict(name: str, report, strong) -> dict:
    out = {"name": name, "version": __version__}
    out.update(dataclasses.asdict(report))
    out["strong"] = dataclasses.asdict(strong)
    return _pyify(out)


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return f"{v:.10g}"
    return str(v)


def render_text(reports: list) -> str:
    """Fixed-width table, one row per quantity per report."""
    lines = []
    for rep in reports:
        lines.append(f"instance: {rep.get('name', '')}  (seed {rep.get('seed')})")
        rows = [
            ("subreg_est", rep["subreg_est"], rep["method_tags"].get("subreg", "")),
            ("eta", rep["eta"], rep["method_tags"].get("eta", "")),
            ("tau", rep["tau"], rep["method_tags"].get("tau", "")),
            ("bcq_tau", rep["bcq_tau"], rep["method_tags"].get("bcq", "")),
            ("chain_residual", rep["chain_residual"], ""),
            ("eta_strong", rep["strong"]["eta_strong"], ""),
            ("ssubreg_est", rep["strong"]["ssubreg_est"], ""),
            ("kernel_trivial", rep["strong"]["kernel_trivial"], ""),
            ("singleton", rep["strong"]["singleton"], ""),
        ]
        for label, value, tag in rows:
            lines.append(f"  {label:<16} {_fmt(value):>14}  {tag}")
        sched = ", ".join(_fmt(d) for d in rep["delta_schedule"])
        lines.append(f"  delta schedule: {sched}")
        if rep.get("degenerate"):
            lines.append("  degenerate: eta clamped at cap")
        lines.append("")
    return "\n".join(lines)


def emit_report(reports: list, fmt: str = "json", path: str | None = None) -> str:
    """Render reports (list of dicts); optionally write atomically to path."""
    if fmt == "json":
        text = json.dumps(reports, indent=2) + "\n"
    elif fmt == "text":
        text = render_text(reports)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    return text
