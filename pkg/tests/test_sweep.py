import json
import math
import os

import numpy as np
import pytest

from modecoupler import sweep
from modecoupler.errors import DomainError
from modecoupler.params import make_params

BASE = make_params(omega=1, kappa=0.5, epsilon=0.5,
                   gamma_a=0.2, gamma_b=0.05, gamma=0.0)


def test_axis_grids():
    lin = sweep.Axis("kappa", 0.0, 2.0, 5).grid()
    assert np.allclose(lin, [0, 0.5, 1, 1.5, 2])
    log = sweep.Axis("epsilon", 0.01, 1.0, 3, scale="log").grid()
    assert np.allclose(log, [0.01, 0.1, 1.0])


def test_spec_validation():
    ax = sweep.Axis("kappa", 0, 1, 8)
    with pytest.raises(DomainError):
        sweep.SweepSpec(base=BASE, axes=())
    with pytest.raises(DomainError):
        sweep.SweepSpec(base=BASE, axes=(sweep.Axis("bogus", 0, 1, 8),))
    with pytest.raises(DomainError):
        sweep.SweepSpec(base=BASE, axes=(sweep.Axis("kappa", 0, 1, 1),))
    with pytest.raises(DomainError):
        sweep.SweepSpec(base=BASE, axes=(ax, ax, ax))


def test_one_axis_sweep_values():
    spec = sweep.SweepSpec(base=BASE, axes=(sweep.Axis("epsilon", 0.1, 1.0, 10),))
    table = sweep.run_sweep(spec)
    assert len(table.rows) == 10
    assert np.allclose(table.column("epsilon"), np.linspace(0.1, 1.0, 10))
    # each row matches an independent evaluation
    from modecoupler.params import with_updates
    from modecoupler.steadystate import steady_state
    for row in table.rows:
        rho = steady_state(with_updates(BASE, epsilon=row["epsilon"])).rho
        assert row["p44"] == pytest.approx(rho.p44, rel=1e-12)
        assert row["abs_rho14"] == pytest.approx(abs(rho.rho14), rel=1e-12)
        assert row["error"] == ""


def test_two_axis_order_is_row_major():
    spec = sweep.SweepSpec(base=BASE, axes=(sweep.Axis("kappa", 0, 1, 3),
                                            sweep.Axis("epsilon", 0.2, 1, 2)))
    table = sweep.run_sweep(spec)
    assert len(table.rows) == 6
    assert [r["kappa"] for r in table.rows] == [0, 0, 0.5, 0.5, 1, 1]
    assert [r["epsilon"] for r in table.rows] == [0.2, 1, 0.2, 1, 0.2, 1]


def test_gamma_d_axis_maps_to_rates():
    base = make_params(omega=1, kappa=1, epsilon=1,
                       gamma_a=1, gamma_b=1, gamma=0)
    spec = sweep.SweepSpec(base=base, axes=(sweep.Axis("gamma_d", -1, 1, 5),))
    table = sweep.run_sweep(spec)
    # visibility is even in the rate asymmetry, zero at the balanced point
    v = table.column("visibility")
    assert np.allclose(v, v[::-1], atol=1e-12)
    assert v[2] == pytest.approx(0.0, abs=1e-12)
    assert v[1] > 0
    # endpoints push one rate to zero, which is still a valid model
    assert table.rows[0]["error"] == "" and table.rows[-1]["error"] == ""


def test_theta_axis_sets_cross_damping():
    base = make_params(omega=1, kappa=0.4, epsilon=0.5,
                       gamma_a=0.2, gamma_b=0.05, gamma=0.0)
    spec = sweep.SweepSpec(base=base,
                           axes=(sweep.Axis("theta", 0.0, math.pi / 2, 3),))
    table = sweep.run_sweep(spec)
    assert table.rows[0]["regime"] == "collective_max"
    assert table.rows[-1]["regime"] == "independent"


def test_singular_points_flagged_with_default_branch():
    base = make_params(omega=1, kappa=1, epsilon=0.0,
                       gamma_a=0.01, gamma_b=0.01, gamma=0.01)
    spec = sweep.SweepSpec(base=base, axes=(sweep.Axis("epsilon", 0.1, 1, 4),))
    table = sweep.run_sweep(spec)
    for row in table.rows:
        assert row["singular"] == 1
        assert row["pdd0"] == 0.0
        assert row["error"] == ""
    # a supplied pdd0 selects another branch
    spec2 = sweep.SweepSpec(base=base, axes=spec.axes, pdd0=1.0)
    table2 = sweep.run_sweep(spec2)
    assert table2.rows[0]["pdd0"] == 1.0
    assert table2.rows[0]["visibility"] == pytest.approx(1.0)


def test_pdd0_axis():
    base = make_params(omega=1, kappa=1, epsilon=0.5,
                       gamma_a=0.01, gamma_b=0.01, gamma=0.01)
    spec = sweep.SweepSpec(base=base, axes=(sweep.Axis("pdd0", 0, 1, 5),))
    table = sweep.run_sweep(spec)
    vis = table.column("visibility")
    assert vis[0] == pytest.approx(1 / 3)
    assert vis[-1] == pytest.approx(1.0)


def test_per_point_errors_are_recorded_not_fatal():
    base = make_params(omega=1, kappa=1, epsilon=1,
                       gamma_a=1, gamma_b=1, gamma=0)
    # |gamma_d| beyond gamma0 is invalid at the last grid point
    spec = sweep.SweepSpec(base=base, axes=(sweep.Axis("gamma_d", 0, 1.5, 4),))
    table = sweep.run_sweep(spec)
    assert table.rows[0]["error"] == ""
    assert table.rows[-1]["regime"] == "error"
    assert "gamma_d" in table.rows[-1]["error"] or table.rows[-1]["error"]


def test_thread_pool_determinism(monkeypatch):
    spec = sweep.SweepSpec(base=BASE, axes=(sweep.Axis("kappa", 0, 2, 9),
                                            sweep.Axis("epsilon", 0, 2, 9)))
    monkeypatch.delenv("MODECOUPLER_THREADS", raising=False)
    serial = sweep.run_sweep(spec)
    monkeypatch.setenv("MODECOUPLER_THREADS", "4")
    parallel = sweep.run_sweep(spec)
    assert serial.columns == parallel.columns
    for a, b in zip(serial.rows, parallel.rows):
        assert a.keys() == b.keys()
        for key in a:
            va, vb = a[key], b[key]
            if isinstance(va, float) and math.isnan(va):
                assert math.isnan(vb)
            else:
                assert va == vb


def test_write_csv_with_sidecar(tmp_path):
    spec = sweep.SweepSpec(base=BASE, axes=(sweep.Axis("epsilon", 0.2, 1, 4),))
    table = sweep.run_sweep(spec)
    path = tmp_path / "sweep.csv"
    table.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == table.columns
    assert len(lines) == 5
    meta = json.loads((tmp_path / "sweep.csv.meta.json").read_text())
    assert meta["base"]["omega"] == 1.0
    assert meta["regimes"] == ["independent"] * 4
    assert "version" in meta


def test_figure_ids_and_sizes():
    with pytest.raises(DomainError):
        sweep.figure_spec("fig1", 32)
    with pytest.raises(DomainError):
        sweep.figure_spec("fig2", 4)
    assert len(sweep.figure_dataset("fig2", 17).rows) == 17
    assert len(sweep.figure_dataset("fig5", 16).rows) == 256


def test_fig2_dataset_properties():
    table = sweep.figure_dataset("fig2", 41)
    gd = table.column("gamma_d")
    vis = table.column("visibility")
    c1 = table.column("c1")
    assert gd[0] == -1.0 and gd[-1] == 1.0
    # fringe contrast is even in the asymmetry and vanishes at balance
    assert np.allclose(vis, vis[::-1], atol=1e-12)
    assert vis[20] == pytest.approx(0.0, abs=1e-12)
    # the one-photon coherence is anticoherent: |rho23| > 0 off balance
    # while the one-photon concurrence branch stays negative
    assert np.all(c1[np.abs(gd) > 0.01] < 0)
    assert np.all(table.column("abs_rho23")[np.abs(gd) > 0.05] > 0)


def test_fig4_collective_damping_raises_visibility():
    # at fixed couplings the visibility grows with the cross-damping rate
    res = 16
    tables = {fid: sweep.figure_dataset(fid, res)
              for fid in ("fig4a", "fig4b", "fig4c")}
    # compare at an interior grid point (kappa, epsilon nonzero)
    idx = 5 * res + 7
    v = [tables[f].rows[idx]["visibility"] for f in ("fig4a", "fig4b", "fig4c")]
    assert v[0] < v[1] < v[2]
    # the only degenerate point is the uncoupled undriven corner at
    # maximal collective damping, where the dark state makes the steady
    # state non-unique
    for f in ("fig4a", "fig4b", "fig4c"):
        for r in tables[f].rows:
            if r["error"]:
                assert f == "fig4c" and r["kappa"] == 0 and r["epsilon"] == 0


def test_fig5_singular_grid():
    table = sweep.figure_dataset("fig5", 16)
    assert all(r["regime"] == "balanced_collective_max" for r in table.rows
               if r["regime"] != "error")
    # visibility at pdd0 = 1 is unity regardless of the drive
    for row in table.rows:
        if row["pdd0"] == 1.0 and row["error"] == "":
            assert row["visibility"] == pytest.approx(1.0)
