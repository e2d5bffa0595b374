"""Parameter-sweep engine: grid evaluation, deterministic ordering, CSV output.

Each grid point gets a fresh steady-state solve. Points are independent, so
they run on a bounded thread pool; results are reassembled in grid order
(axis2-major, axis1 fastest) so the output never depends on scheduling.
Failed solves are kept as rows with status 'solver_failed', never dropped.
"""

from __future__ import annotations

import csv
import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .config import SweepSpec
from .lindblad import build_superoperator
from .model import SystemParams, bath_channels, total_hamiltonian
from .solvers import SteadyStateError, steady_state

PARAM_FIELDS = ("e1", "e2", "e3", "e4", "g_lm", "g_mr", "kappa_l", "kappa_m", "kappa_r", "t_l", "t_m", "t_r")
STATUS_OK = "ok"
STATUS_FAILED = "solver_failed"


@dataclass(frozen=True)
class SweepRow:
    params: SystemParams
    j_l: float
    j_m: float
    j_r: float
    residual: float
    derived: dict[str, float]
    status: str


def grid_points(spec: SweepSpec) -> list[SystemParams]:
    """All parameter records of the grid, axis2-major, axis1 fastest.

    Every point is validated here, before any solve, so an invalid corner
    (say a temperature crossing zero) aborts the sweep up front.
    """
    axis1_values = spec.axis1.values()
    axis2_values = spec.axis2.values() if spec.axis2 is not None else [None]
    points = []
    for v2 in axis2_values:
        for v1 in axis1_values:
            updates = {spec.axis1.field_name: float(v1)}
            if spec.axis2 is not None:
                updates[spec.axis2.field_name] = float(v2)
            points.append(dataclasses.replace(spec.base, **updates))
    return points


def solve_point(params: SystemParams, tol: float) -> SweepRow:
    """One steady-state solve plus currents; failures become flagged rows."""
    derived_env = {"t_l": params.t_l, "t_m": params.t_m, "t_r": params.t_r}
    try:
        h = total_hamiltonian(params)
        channels = bath_channels(params)
        result = steady_state(build_superoperator(h, channels), tol=tol)
    except SteadyStateError:
        return SweepRow(params, float("nan"), float("nan"), float("nan"), float("nan"), derived_env, STATUS_FAILED)
    cur = result.currents
    return SweepRow(params, cur.j_l, cur.j_m, cur.j_r, result.residual, derived_env, STATUS_OK)


def run_sweep(spec: SweepSpec, tol: float = 1e-10, threads: int = 1) -> list[SweepRow]:
    """Evaluate the whole grid; output order is independent of thread count."""
    if threads < 1:
        raise ValueError("threads must be at least 1")
    points = grid_points(spec)
    if threads == 1:
        rows = [solve_point(p, tol) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda p: solve_point(p, tol), points))
    return [
        dataclasses.replace(row, derived={c.name: c.fn(row.derived) for c in spec.derived})
        for row in rows
    ]


def csv_columns(spec: SweepSpec) -> list[str]:
    return list(PARAM_FIELDS) + ["j_l", "j_m", "j_r", "residual"] + [c.name for c in spec.derived] + ["status"]


def _fmt(value: float) -> str:
    return format(value, ".17g")


def emit_csv(rows: list[SweepRow], spec: SweepSpec, path: str | Path) -> None:
    """UTF-8 CSV, 17-significant-digit floats (round-trip exact), LF endings."""
    if not rows:
        raise ValueError("emit_csv: no rows to write")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(csv_columns(spec))
            for row in rows:
                record = [_fmt(getattr(row.params, f)) for f in PARAM_FIELDS]
                record += [_fmt(row.j_l), _fmt(row.j_m), _fmt(row.j_r), _fmt(row.residual)]
                record += [_fmt(row.derived[c.name]) for c in spec.derived]
                record.append(row.status)
                writer.writerow(record)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def row_value(row: SweepRow, column: str) -> float:
    """Look up a plottable column (parameter, current, residual, or derived)."""
    if column in PARAM_FIELDS:
        return float(getattr(row.params, column))
    if column in ("j_l", "j_m", "j_r", "residual"):
        return float(getattr(row, column))
    if column in row.derived:
        return row.derived[column]
    raise KeyError(f"unknown column {column!r}")
