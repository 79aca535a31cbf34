"""Time evolution: fixed-step RK4 for the 7-variable linear system, for the
reduced (|b>,|d>) system, and a brute-force truncated-Fock Lindblad oracle.

The oracle works in the interaction picture with the explicitly
time-dependent antiresonant drive, so its two-photon coherence differs
from the linear system's rotated rho14 by a phase e^{+-2i omega t};
comparisons use |rho14|.  Everything uses fixed steps: the systems are
small, stiff-free under the step guard, and reproducibility matters more
than speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import liouvillian
from ._kernels import affine_rk4, trig_rk4
from .errors import DomainError, NonFiniteError, StepSizeError
from .params import SystemParams, gamma0 as _g0
from .statespace import XDensityMatrix

STEP_GUARD = 0.05  # dt <= STEP_GUARD / max(omega, kappa, epsilon, gamma0)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    ys: np.ndarray  # (n_times, 7) packed states
    params: SystemParams
    dt: float
    method: str = "rk4-fixed"

    def states(self):
        return [liouvillian.unpack(y) for y in self.ys]

    def state(self, i: int) -> XDensityMatrix:
        return liouvillian.unpack(self.ys[i])

    def final(self) -> XDensityMatrix:
        return liouvillian.unpack(self.ys[-1])

    def to_csv(self, path):
        from .statespace import CSV_COLUMNS
        with open(path, "w") as fh:
            fh.write("time," + ",".join(CSV_COLUMNS) + "\n")
            for t, y in zip(self.times, self.ys):
                row = liouvillian.unpack(y).csv_row()
                fh.write(",".join(f"{v:.12g}" for v in (t, *row)) + "\n")


@dataclass(frozen=True)
class FockState:
    n_max: int
    rho: np.ndarray  # ((n_max+1)^2, (n_max+1)^2) complex, interaction picture

    def validate(self, herm_tol=1e-12, trace_tol=1e-9, eig_tol=1e-8):
        if np.max(np.abs(self.rho - self.rho.conj().T)) > herm_tol:
            raise DomainError("Fock state is not Hermitian")
        if abs(np.trace(self.rho).real - 1.0) > trace_tol:
            raise DomainError("Fock state trace differs from 1")
        if np.min(np.linalg.eigvalsh(self.rho)) < -eig_tol:
            raise DomainError("Fock state has a negative eigenvalue")
        return self


@dataclass(frozen=True)
class FockTrajectory:
    times: np.ndarray
    rhos: list = field(repr=False)
    n_max: int = 1
    params: SystemParams | None = None


def max_step(params: SystemParams) -> float:
    return STEP_GUARD / max(params.omega, params.kappa, params.epsilon,
                            _g0(params))


def _check_step(params: SystemParams, dt: float):
    if dt <= 0:
        raise StepSizeError("dt must be positive")
    guard = max_step(params)
    if dt > guard * (1 + 1e-12):
        raise StepSizeError(f"dt = {dt:g} exceeds stability guard {guard:g}")


def _steps(t_end: float, dt: float, sample_every: int):
    n_steps = int(round(t_end / dt))
    if n_steps < 1:
        raise StepSizeError("t_end shorter than one step")
    n_steps = ((n_steps + sample_every - 1) // sample_every) * sample_every
    return n_steps


def integrate_linear(sys: liouvillian.LinearSystem, y0, t_end: float,
                     dt: float, sample_every: int = 1) -> Trajectory:
    """Classical 4th-order fixed-step integration of dY/dt = M Y + P."""
    _check_step(sys.params, dt)
    y0 = np.asarray(y0, dtype=float)
    if not np.all(np.isfinite(y0)):
        raise NonFiniteError("initial state is not finite")
    n_steps = _steps(t_end, dt, sample_every)
    ys = affine_rk4(sys.m, sys.p, y0, dt, n_steps, sample_every)
    if not np.all(np.isfinite(ys)):
        raise NonFiniteError("integration overflowed")
    times = np.arange(ys.shape[0]) * (dt * sample_every)
    return Trajectory(times=times, ys=ys, params=sys.params, dt=dt)


def relax_linear(sys: liouvillian.LinearSystem, y0, dt: float | None = None,
                 t_max: float | None = None, tol: float = 1e-10) -> np.ndarray:
    """Integrate until ||M y + P||_inf < tol (or t_max, default 50 over the
    smallest positive rate); returns the final packed state."""
    params = sys.params
    if dt is None:
        dt = max_step(params)
    _check_step(params, dt)
    rates = [r for r in (params.gamma_a, params.gamma_b, params.kappa,
                         params.epsilon, _g0(params)) if r > 0]
    if t_max is None:
        if not rates:
            raise DomainError("no positive rate: the system cannot relax")
        t_max = 50.0 / min(rates)
    y = np.asarray(y0, dtype=float)
    chunk = max(1, int(round(t_max / dt / 200)))
    done = 0.0
    while done < t_max:
        ys = affine_rk4(sys.m, sys.p, y, dt, chunk, chunk)
        y = ys[-1]
        if not np.all(np.isfinite(y)):
            raise NonFiniteError("relaxation overflowed")
        done += chunk * dt
        if np.max(np.abs(sys.m @ y + sys.p)) < tol:
            break
    return y


def integrate_reduced(red: liouvillian.ReducedSystem, v0, t_end: float,
                      dt: float, sample_every: int = 1):
    """RK4 on the reduced (|b>,|d>) system; returns (times, vectors)."""
    _check_step(red.params, dt)
    n_steps = _steps(t_end, dt, sample_every)
    vs = affine_rk4(red.m, red.p, np.asarray(v0, dtype=float), dt,
                    n_steps, sample_every)
    if not np.all(np.isfinite(vs)):
        raise NonFiniteError("integration overflowed")
    times = np.arange(vs.shape[0]) * (dt * sample_every)
    return times, vs


def singular_initial_state(params: SystemParams, pdd0: float) -> XDensityMatrix:
    """Mixture pdd0 |d><d| + (1 - pdd0) |vacuum><vacuum| (balanced rates)."""
    if not 0.0 <= pdd0 <= 1.0:
        raise DomainError("pdd0 must lie in [0, 1]")
    # for gamma_a = gamma_b: |d> = (|3> - |2>)/sqrt(2)
    return XDensityMatrix(p11=1.0 - pdd0, p22=pdd0 / 2, p33=pdd0 / 2,
                          p44=0.0, rho23=-pdd0 / 2 + 0j)


# ---------------------------------------------------------------------------
# truncated-Fock oracle

def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(complex)


def mode_operators(n_max: int):
    a = annihilation(n_max)
    eye = np.eye(n_max + 1, dtype=complex)
    a_a = np.kron(a, eye)
    a_b = np.kron(eye, a)
    return a_a, a_b


def _comm_super(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i[h, .] on row-major vectorized matrices."""
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    return -1j * (np.kron(h, eye) - np.kron(eye, h.T))


def _lindblad_cross(c_left: np.ndarray, c_right: np.ndarray,
                    rate: float) -> np.ndarray:
    """rate * (c_left rho c_right^dag - 1/2 {c_right^dag c_left, rho})."""
    d = c_left.shape[0]
    eye = np.eye(d, dtype=complex)
    cc = c_right.conj().T @ c_left
    return rate * (np.kron(c_left, c_right.conj())
                   - 0.5 * np.kron(cc, eye) - 0.5 * np.kron(eye, cc.T))


def fock_superoperators(params: SystemParams, n_max: int):
    """(s0, s1, s2) with drho/dt = (s0 + cos(2wt) s1 + sin(2wt) s2) vec(rho).

    s0 carries the beam-splitter coupling and the full dissipator (local
    rates plus the resonant cross terms); s1/s2 carry the antiresonant
    pair drive split into its two Hermitian quadratures.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    a_a, a_b = mode_operators(n_max)
    k, e = params.kappa, params.epsilon
    h0 = k * (a_a @ a_b.conj().T + a_a.conj().T @ a_b)
    pair = a_a @ a_b
    v1 = e * (pair + pair.conj().T)
    v2 = 1j * e * (pair - pair.conj().T)
    s0 = _comm_super(h0)
    s0 += _lindblad_cross(a_a, a_a, params.gamma_a)
    s0 += _lindblad_cross(a_b, a_b, params.gamma_b)
    # cross damping: -g/2 (aA^dag aB rho + rho aA^dag aB - 2 aB rho aA^dag) + (A<->B)
    s0 += _lindblad_cross(a_b, a_a, params.gamma)
    s0 += _lindblad_cross(a_a, a_b, params.gamma)
    return s0, _comm_super(v1), _comm_super(v2)


def fock_rhs(params: SystemParams, n_max: int, t: float,
             rho: np.ndarray) -> np.ndarray:
    """Action of the full Lindblad generator at time t on a density matrix."""
    s0, s1, s2 = fock_superoperators(params, n_max)
    d = (n_max + 1) ** 2
    sup = (s0 + math.cos(2 * params.omega * t) * s1
           + math.sin(2 * params.omega * t) * s2)
    return (sup @ np.asarray(rho, dtype=complex).reshape(-1)).reshape(d, d)


def vacuum_fock(n_max: int) -> FockState:
    d = (n_max + 1) ** 2
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = 1.0
    return FockState(n_max=n_max, rho=rho)


def evolve_fock(params: SystemParams, n_max: int, rho0: FockState,
                t_end: float, dt: float, sample_every: int = 1) -> FockTrajectory:
    """Propagate the truncated-Fock master equation with fixed-step RK4."""
    _check_step(params, dt)
    if rho0.n_max != n_max:
        raise DomainError("rho0 truncation differs from n_max")
    s0, s1, s2 = fock_superoperators(params, n_max)
    n_steps = _steps(t_end, dt, sample_every)
    d = (n_max + 1) ** 2
    vecs = trig_rk4(s0, s1, s2, 2 * params.omega,
                    rho0.rho.reshape(-1).astype(complex), 0.0, dt,
                    n_steps, sample_every)
    if not np.all(np.isfinite(vecs)):
        raise NonFiniteError("Fock integration overflowed")
    times = np.arange(vecs.shape[0]) * (dt * sample_every)
    rhos = [FockState(n_max=n_max, rho=v.reshape(d, d)) for v in vecs]
    return FockTrajectory(times=times, rhos=rhos, n_max=n_max, params=params)


def extract_x(state: FockState) -> XDensityMatrix:
    """Project the low-excitation X elements out of a Fock density matrix.

    Populations are taken as-is (no renormalization); with n_max = 1 the
    result is exactly comparable to the 7-variable system.
    """
    n = state.n_max
    i1, i2, i3, i4 = 0, 1, n + 1, n + 2
    rho = state.rho
    return XDensityMatrix(p11=rho[i1, i1].real, p22=rho[i2, i2].real,
                          p33=rho[i3, i3].real, p44=rho[i4, i4].real,
                          rho23=rho[i2, i3], rho14=rho[i1, i4])


def off_x_residual(state: FockState) -> float:
    """Largest coherence outside the X pattern within the 0/1 sector."""
    n = state.n_max
    idx = [0, 1, n + 1, n + 2]
    sub = state.rho[np.ix_(idx, idx)].copy()
    for i in range(4):
        sub[i, i] = 0.0
    sub[1, 2] = sub[2, 1] = 0.0
    sub[0, 3] = sub[3, 0] = 0.0
    return float(np.max(np.abs(sub)))
