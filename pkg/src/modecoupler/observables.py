"""Derived physical quantities: interference pattern and first-order
visibility, concurrence of the X state, zero-delay cross correlation
g2(0), mean photon numbers and population-inversion ratios.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import steadystate
from .errors import DomainError, MissingInitialCondition
from .params import SystemParams, derive, gamma0 as _g0, gamma_d as _gd
from .statespace import XDensityMatrix

OBSERVABLE_COLUMNS = ("visibility", "c", "c1", "c2", "g2",
                      "n_a", "n_b", "ratio_24", "ratio_34")


@dataclass(frozen=True)
class InterferenceConfig:
    detector_constant: float = 1.0  # alpha |E|^2; visibility is scale-free
    phase: float = 0.0  # (k_A - k_B).r plus the geometric mode phase

    def __post_init__(self):
        if self.detector_constant <= 0:
            raise DomainError("detector_constant must be positive")


@dataclass(frozen=True)
class ConcurrenceResult:
    c: float
    c1: float  # one-photon branch, may be negative
    c2: float  # two-photon branch, may be negative


@dataclass(frozen=True)
class ObservableSet:
    visibility: float
    concurrence: ConcurrenceResult
    g2: float
    n_a: float
    n_b: float
    ratio_24: float
    ratio_34: float

    def csv_row(self):
        return (self.visibility, self.concurrence.c, self.concurrence.c1,
                self.concurrence.c2, self.g2, self.n_a, self.n_b,
                self.ratio_24, self.ratio_34)


def intensity(rho: XDensityMatrix, cfg: InterferenceConfig = InterferenceConfig()) -> float:
    """Detected intensity at the configured phase; the fringe offset is the
    phase of <aA^dag aB> = rho23."""
    offset = cmath.phase(rho.rho23) if rho.rho23 != 0 else 0.0
    return cfg.detector_constant * (
        2 * rho.p44 + rho.p22 + rho.p33
        + 2 * abs(rho.rho23) * math.cos(cfg.phase + offset))


def visibility_from_state(rho: XDensityMatrix) -> float:
    denom = 2 * rho.p44 + rho.p22 + rho.p33
    if denom <= 0:
        raise DomainError("no photons: visibility undefined")
    return 2 * abs(rho.rho23) / denom


def visibility_separate(ratio_r: float, ratio_u: float) -> float:
    """Decay to separate reservoirs: V = |u| 2R / (4R^2 + 1)."""
    return abs(ratio_u) * 2 * ratio_r / (4 * ratio_r**2 + 1)


def visibility_common(ratio_r: float, ratio_u: float) -> float:
    """Maximal collective decay: V = sqrt(4R^2 u^2 + 1 - u^2) / (4R^2 + 1)."""
    return math.sqrt(4 * ratio_r**2 * ratio_u**2 + 1 - ratio_u**2) / (4 * ratio_r**2 + 1)


def visibility_general(params: SystemParams) -> float:
    """General closed form; valid only for gamma_a != gamma_b."""
    if params.gamma_a == params.gamma_b:
        raise DomainError("general visibility form requires gamma_a != gamma_b")
    g0, gd, g, k = _g0(params), _gd(params), params.gamma, params.kappa
    return (abs(gd) * math.sqrt(4 * k**2 * (g0**2 - g**2)**2 + (g * g0 * gd)**2)
            / ((4 * k**2 + g0**2) * (g0**2 - g**2)))


def visibility_singular(params: SystemParams, pdd0: float) -> float:
    """Balanced maximal collective decay; depends on the initial rho_dd."""
    e, g0, w = params.epsilon, _g0(params), params.omega
    num = abs(e**2 - (4 * e**2 + g0**2 + 4 * w**2) * pdd0)
    den = 3 * e**2 + (g0**2 + 4 * w**2) * pdd0
    return num / den


def visibility_analytic(params: SystemParams, pdd0: float | None = None) -> float:
    """Regime-dispatched closed-form steady-state visibility."""
    regime = steadystate.classify_regime(params)
    if regime == steadystate.BALANCED_COLLECTIVE_MAX:
        if pdd0 is None:
            raise MissingInitialCondition("singular regime: pdd0 required")
        return visibility_singular(params, pdd0)
    if regime == steadystate.BALANCED_SUBCRITICAL:
        return 0.0  # rho23 vanishes for balanced subcritical decay
    rates = derive(params)
    if params.gamma == 0.0:
        return visibility_separate(rates.ratio_r, rates.ratio_u)
    if regime in (steadystate.COLLECTIVE_MAX, steadystate.TRAPPED_KAPPA0):
        return visibility_common(rates.ratio_r, rates.ratio_u)
    return visibility_general(params)


def concurrence(rho: XDensityMatrix) -> ConcurrenceResult:
    """Closed-form concurrence of the X state: C = max(0, C1, C2)."""
    c1 = 2 * (abs(rho.rho23) - math.sqrt(max(rho.p11 * rho.p44, 0.0)))
    c2 = 2 * (abs(rho.rho14) - math.sqrt(max(rho.p22 * rho.p33, 0.0)))
    return ConcurrenceResult(c=max(0.0, c1, c2), c1=c1, c2=c2)


def concurrence_analytic_independent(params: SystemParams) -> ConcurrenceResult:
    """Closed forms for gamma = 0."""
    if params.gamma != 0.0:
        raise DomainError("independent-decay concurrence requires gamma = 0")
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb = params.gamma_a, params.gamma_b
    g0, gd = _g0(params), _gd(params)
    d0 = ((4 * k**2 + ga * gb) * (4 * w**2 + g0**2)
          + 4 * e**2 * (4 * k**2 + g0**2))
    c1 = (2 * e / d0) * (4 * abs(gd) * k * e
                         - (4 * k**2 + g0**2 - gd**2)
                         * math.sqrt(4 * w**2 + e**2 + g0**2))
    c2 = (2 * e / d0) * ((4 * k**2 + ga * gb) * math.sqrt(4 * w**2 + g0**2)
                         - e * math.sqrt((4 * k**2 + ga**2) * (4 * k**2 + gb**2)))
    return ConcurrenceResult(c=max(0.0, c1, c2), c1=c1, c2=c2)


def concurrence_analytic_collective(params: SystemParams) -> ConcurrenceResult:
    """Closed forms at maximal collective decay with unequal rates."""
    g0 = _g0(params)
    gmax = math.sqrt(params.gamma_a * params.gamma_b)
    if abs(params.gamma - gmax) > 1e-12 * max(g0, 1e-300):
        raise DomainError("collective concurrence requires gamma = sqrt(ga*gb)")
    if params.gamma_a == params.gamma_b:
        raise DomainError("collective closed form requires gamma_a != gamma_b")
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb = params.gamma_a, params.gamma_b
    dt = k**2 * (g0**2 + 4 * w**2) + e**2 * (g0**2 + 4 * k**2)
    c1 = (2 * e / dt) * (0.5 * e * math.sqrt(k**2 * (ga - gb)**2 + ga * gb * g0**2)
                         - k**2 * math.sqrt(e**2 + 4 * w**2 + g0**2))
    c2 = (2 * e / dt) * (k**2 * math.sqrt(g0**2 + 4 * w**2)
                         - 0.5 * e * math.sqrt((2 * k**2 + ga * g0)
                                               * (2 * k**2 + gb * g0)))
    return ConcurrenceResult(c=max(0.0, c1, c2), c1=c1, c2=c2)


def photon_numbers(rho: XDensityMatrix):
    """Mean photon numbers (<aA^dag aA>, <aB^dag aB>) in the 4-state basis."""
    return rho.p44 + rho.p22, rho.p44 + rho.p33


def g2(rho: XDensityMatrix) -> float:
    """Zero-delay cross correlation rho44 / ((rho44+rho22)(rho44+rho33))."""
    n_a, n_b = photon_numbers(rho)
    if n_a <= 0 or n_b <= 0:
        raise DomainError("g2 undefined at zero photon number")
    return rho.p44 / (n_a * n_b)


def g2_analytic_limits(params: SystemParams):
    """Printed closed-form limits for gamma = 0: ('balanced', value) for
    equal rates, ('antibunched_approx', value) for unequal rates with
    kappa < epsilon."""
    if params.gamma != 0.0:
        raise DomainError("g2 limits are stated for gamma = 0")
    w, k, e = params.omega, params.kappa, params.epsilon
    g0, gd = _g0(params), _gd(params)
    if params.gamma_a == params.gamma_b:
        if e == 0:
            raise DomainError("balanced g2 limit requires epsilon > 0")
        return "balanced", 1.0 + (4 * w**2 + g0**2) / (4 * e**2)
    if not k < e:
        raise DomainError("antibunched approximation requires kappa < epsilon")
    return "antibunched_approx", (
        1.0 - 4 * k**2 * gd**2 / ((4 * k**2 + g0**2)**2 - g0**2 * gd**2))


def inversion_ratios(rho: XDensityMatrix):
    """(rho22/rho44, rho33/rho44)."""
    if rho.p44 <= 0:
        raise DomainError("inversion ratios undefined at rho44 = 0")
    return rho.p22 / rho.p44, rho.p33 / rho.p44


def compute_all(rho: XDensityMatrix) -> ObservableSet:
    """Full observable set; entries undefined for the state become NaN."""
    nan = float("nan")
    try:
        vis = visibility_from_state(rho)
    except DomainError:
        vis = nan
    try:
        g2v = g2(rho)
    except DomainError:
        g2v = nan
    try:
        r24, r34 = inversion_ratios(rho)
    except DomainError:
        r24 = r34 = nan
    n_a, n_b = photon_numbers(rho)
    return ObservableSet(visibility=vis, concurrence=concurrence(rho),
                         g2=g2v, n_a=n_a, n_b=n_b,
                         ratio_24=r24, ratio_34=r34)
