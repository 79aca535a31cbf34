"""Parameter-grid evaluation and the datasets behind the survey figures.

Each grid point yields the steady state plus the full observable set.
Singular points are evaluated with the supplied rho_dd(0) (default 0, the
vacuum-reachable branch) and flagged.  Results are deterministic and
gathered by grid index regardless of execution order.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .errors import DomainError, ModeCouplerError
from .observables import OBSERVABLE_COLUMNS, compute_all
from .params import (
    SystemParams, collective_rate, gamma0 as _g0, validate, with_updates,
)
from .statespace import CSV_COLUMNS
from .steadystate import classify_regime, steady_state

AXIS_NAMES = ("omega", "kappa", "epsilon", "gamma_a", "gamma_b", "gamma",
              "theta", "gamma_d", "pdd0")


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int
    scale: str = "linear"  # or "log"

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    axes: tuple
    pdd0: float | None = None
    outputs: tuple = OBSERVABLE_COLUMNS

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise DomainError("a sweep takes one or two axes")
        for ax in self.axes:
            if ax.name not in AXIS_NAMES:
                raise DomainError(f"unknown axis name {ax.name!r}")
            if ax.count < 2:
                raise DomainError("axis count must be >= 2")
            if not (math.isfinite(ax.start) and math.isfinite(ax.stop)):
                raise DomainError("axis range must be finite")


@dataclass
class SweepTable:
    columns: list
    rows: list  # list of dicts keyed by column
    spec_meta: dict = field(default_factory=dict)

    def column(self, name):
        return np.array([row[name] for row in self.rows], dtype=float)

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_fmt(row.get(c)) for c in self.columns) + "\n")
        sidecar = os.fspath(path) + ".meta.json"
        meta = dict(self.spec_meta)
        meta["version"] = __version__
        meta["regimes"] = [row.get("regime") for row in self.rows]
        with open(sidecar, "w") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _apply_axis(params: SystemParams, name: str, value: float) -> SystemParams:
    if name == "gamma_d":
        g0 = _g0(params)
        if abs(value) > g0:
            raise DomainError("|gamma_d| cannot exceed gamma0")
        return with_updates(params, gamma_a=g0 + value, gamma_b=g0 - value)
    if name == "theta":
        return with_updates(params, theta=value,
                            gamma=collective_rate(params.gamma_a,
                                                  params.gamma_b, value))
    return with_updates(params, **{name: value})


def _evaluate_point(base: SystemParams, assignments, pdd0):
    row = {}
    point_pdd0 = pdd0
    params = base
    try:
        for name, value in assignments:
            row[name] = value
            if name == "pdd0":
                point_pdd0 = value
            else:
                params = _apply_axis(params, name, value)
        regime = classify_regime(params)
        singular = regime == "balanced_collective_max"
        if singular and point_pdd0 is None:
            point_pdd0 = 0.0  # vacuum-reachable branch, flagged below
        result = steady_state(params, point_pdd0 if singular else None)
        obs = compute_all(result.rho)
        row["regime"] = regime
        row["singular"] = int(singular)
        row["denominator"] = result.denominator
        if singular:
            row["pdd0"] = point_pdd0
        for col, val in zip(CSV_COLUMNS, result.rho.csv_row()):
            row[col] = val
        row["abs_rho23"] = abs(result.rho.rho23)
        row["abs_rho14"] = abs(result.rho.rho14)
        for col, val in zip(OBSERVABLE_COLUMNS, obs.csv_row()):
            row[col] = val
        row["error"] = ""
    except ModeCouplerError as exc:
        row["regime"] = "error"
        row["singular"] = ""
        row["error"] = str(exc)
    return row


def _max_workers():
    raw = os.environ.get("MODECOUPLER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate the grid; per-point errors are recorded, not fatal."""
    validate(spec.base)
    grids = [ax.grid() for ax in spec.axes]
    points = []
    if len(spec.axes) == 1:
        for v in grids[0]:
            points.append([(spec.axes[0].name, float(v))])
    else:
        for v0 in grids[0]:
            for v1 in grids[1]:
                points.append([(spec.axes[0].name, float(v0)),
                               (spec.axes[1].name, float(v1))])
    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(
                lambda pt: _evaluate_point(spec.base, pt, spec.pdd0), points))
    else:
        rows = [_evaluate_point(spec.base, pt, spec.pdd0) for pt in points]
    axis_cols = [ax.name for ax in spec.axes]
    columns = axis_cols + ["regime", "singular", "denominator"]
    if "pdd0" not in axis_cols:
        columns += ["pdd0"] if any("pdd0" in r for r in rows) else []
    columns += list(CSV_COLUMNS) + ["abs_rho23", "abs_rho14"]
    columns += list(OBSERVABLE_COLUMNS) + ["error"]
    meta = {
        "base": {k: getattr(spec.base, k) for k in
                 ("omega", "kappa", "epsilon", "gamma_a", "gamma_b", "gamma")},
        "axes": [vars(ax) for ax in spec.axes],
        "pdd0": spec.pdd0,
    }
    return SweepTable(columns=columns, rows=rows, spec_meta=meta)


# ---------------------------------------------------------------------------
# figure datasets

FIGURE_IDS = ("fig2", "fig3a", "fig3b", "fig3c",
              "fig4a", "fig4b", "fig4c", "fig5", "fig6a", "fig6b", "fig6c")

# default coupling axes cover both the ultra-strong (~1) and deep-strong
# (>1) ranges; overridable through max_coupling
_G3 = {"fig3a": 0.01, "fig3b": 0.1, "fig3c": 0.2,
       "fig6a": 0.01, "fig6b": 0.1, "fig6c": 0.2}


def figure_spec(fig_id: str, resolution: int, max_coupling: float = 2.0) -> SweepSpec:
    if fig_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {fig_id!r}")
    if resolution < 16:
        raise DomainError("resolution must be >= 16")
    w = 1.0
    if fig_id == "fig2":
        base = SystemParams(omega=w, kappa=w, epsilon=w,
                            gamma_a=w, gamma_b=w, gamma=0.0)
        return SweepSpec(base=base,
                         axes=(Axis("gamma_d", -w, w, resolution),))
    if fig_id in _G3:
        base = SystemParams(omega=w, kappa=0.0, epsilon=0.0,
                            gamma_a=_G3[fig_id] * w, gamma_b=0.01 * w, gamma=0.0)
        return SweepSpec(base=base,
                         axes=(Axis("kappa", 0.0, max_coupling * w, resolution),
                               Axis("epsilon", 0.0, max_coupling * w, resolution)))
    if fig_id.startswith("fig4"):
        ga, gb = 0.2 * w, 0.01 * w
        frac = {"fig4a": 0.0, "fig4b": 0.5, "fig4c": 1.0}[fig_id]
        base = SystemParams(omega=w, kappa=0.0, epsilon=0.0, gamma_a=ga,
                            gamma_b=gb, gamma=frac * math.sqrt(ga * gb))
        return SweepSpec(base=base,
                         axes=(Axis("kappa", 0.0, max_coupling * w, resolution),
                               Axis("epsilon", 0.0, max_coupling * w, resolution)))
    # fig5: singular regime, concurrence vs epsilon and the initial rho_dd
    g = 0.01 * w
    base = SystemParams(omega=w, kappa=1.0 * w, epsilon=0.0,
                        gamma_a=g, gamma_b=g, gamma=g)
    return SweepSpec(base=base,
                     axes=(Axis("epsilon", 0.0, max_coupling * w, resolution),
                           Axis("pdd0", 0.0, 1.0, resolution)))


def figure_dataset(fig_id: str, resolution: int,
                   max_coupling: float = 2.0) -> SweepTable:
    """Grid data sufficient to replot the named survey figure."""
    table = run_sweep(figure_spec(fig_id, resolution, max_coupling))
    table.spec_meta["figure"] = fig_id
    return table
