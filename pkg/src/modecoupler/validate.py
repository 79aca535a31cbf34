"""Self-validation suite: cross-checks the closed forms against the dense
linear solve, the 7-variable dynamics against the truncated-Fock oracle,
and the visibility bound.  Used by the `validate` CLI subcommand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, liouvillian, observables, steadystate
from .params import SystemParams, make_params
from .statespace import vacuum


@dataclass
class SuiteReport:
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return self.failed == 0


def random_regular_params(rng, n: int, lo: float = 1e-3, hi: float = 2.0):
    """Log-uniform rate draws (omega = 1) with gamma accepted by rejection
    under gamma^2 <= gamma_a*gamma_b; singular points excluded."""
    out = []
    while len(out) < n:
        k, e, ga, gb = np.exp(rng.uniform(np.log(lo), np.log(hi), size=4))
        g = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        if g * g > ga * gb:
            continue
        p = make_params(1.0, kappa=k, epsilon=e, gamma_a=ga, gamma_b=gb, gamma=g)
        if liouvillian.is_singular_point(p):
            continue
        out.append(p)
    return out


def check_analytic_vs_numeric(report: SuiteReport, seed: int, n: int = 20,
                              rtol: float = 1e-10):
    rng = np.random.default_rng(seed)
    for i, p in enumerate(random_regular_params(rng, n, lo=1e-2)):
        a = steadystate.analytic_general(p).rho
        b = steadystate.numeric_steady(p).rho
        dev = steadystate.max_deviation(a, b)
        report.record(f"analytic-vs-numeric[{i}]", dev <= rtol,
                      f"max deviation {dev:g}")


def check_oracle(report: SuiteReport, tol: float = 1e-6):
    cases = [
        make_params(1.0, kappa=1.0, epsilon=1.0, gamma_a=1.0, gamma_b=0.5),
        make_params(1.0, kappa=0.4, epsilon=0.8, gamma_a=0.3, gamma_b=0.7,
                    gamma=math.sqrt(0.21)),
    ]
    for i, p in enumerate(cases):
        dev = oracle_deviation(p, t_end=8.0, dt=1e-3, n_samples=50)
        report.record(f"fock-oracle[{i}]", dev <= tol, f"max deviation {dev:g}")


def oracle_deviation(params: SystemParams, t_end: float, dt: float,
                     n_samples: int, n_max: int = 1) -> float:
    """Largest mismatch between the 7-variable trajectory and the n_max
    Fock oracle over populations, rho23 and |rho14|."""
    sample_every = max(1, int(round(t_end / dt / n_samples)))
    sys = liouvillian.build(params)
    lin = dynamics.integrate_linear(sys, liouvillian.pack(vacuum()),
                                    t_end, dt, sample_every)
    fock = dynamics.evolve_fock(params, n_max, dynamics.vacuum_fock(n_max),
                                t_end, dt, sample_every)
    dev = 0.0
    for y, fs in zip(lin.ys, fock.rhos):
        a = liouvillian.unpack(y)
        b = dynamics.extract_x(fs)
        dev = max(dev,
                  abs(a.p11 - b.p11), abs(a.p22 - b.p22),
                  abs(a.p33 - b.p33), abs(a.p44 - b.p44),
                  abs(a.rho23 - b.rho23),
                  abs(abs(a.rho14) - abs(b.rho14)))
    return dev


def check_visibility_bound(report: SuiteReport, n: int = 64):
    grid_r = np.linspace(0.0, 2.0, n)
    grid_u = np.linspace(0.0, 1.0, n)
    worst = max(observables.visibility_separate(r, u)
                for r in grid_r for u in grid_u)
    report.record("visibility-bound", worst <= 0.5 + 1e-12,
                  f"max V = {worst:.12g}")


def run_suite(seed: int = 42) -> SuiteReport:
    report = SuiteReport()
    check_analytic_vs_numeric(report, seed)
    check_oracle(report)
    check_visibility_bound(report)
    return report
