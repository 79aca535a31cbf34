"""Steady states of the coupled-mode system.

Closed forms exist in every regime; the dense linear solve of the 7x7
system is the authoritative reference against which the (long, easy to
mistranscribe) closed forms are validated.  At the balanced maximal
collective-decay point the generator is singular and the steady state
depends on the initial antisymmetric-state population rho_dd(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import liouvillian
from .errors import DomainError, MissingInitialCondition, SingularRegimeError
from .params import SystemParams, gamma0 as _g0, gamma_d as _gd, validate
from .statespace import XDensityMatrix

REGIME_RTOL = 1e-12

GENERAL = "general"
INDEPENDENT = "independent"
COLLECTIVE_MAX = "collective_max"
BALANCED_SUBCRITICAL = "balanced_subcritical"
BALANCED_COLLECTIVE_MAX = "balanced_collective_max"
TRAPPED_KAPPA0 = "trapped_kappa0"


@dataclass(frozen=True)
class SteadyStateResult:
    rho: XDensityMatrix
    regime: str
    denominator: float
    singular: bool = False
    initial_pdd: float | None = None


def classify_regime(params: SystemParams) -> str:
    """Exact-identity regime dispatch with relative tolerance REGIME_RTOL.

    Near-regime parameters deliberately fall through to `general`.
    """
    g0 = _g0(params)
    scale = g0 if g0 > 0 else 1.0
    balanced = abs(params.gamma_a - params.gamma_b) <= REGIME_RTOL * scale
    gmax = math.sqrt(params.gamma_a * params.gamma_b)
    at_max = abs(params.gamma - gmax) <= REGIME_RTOL * scale
    if balanced and at_max and g0 > 0:
        return BALANCED_COLLECTIVE_MAX
    if balanced and params.gamma < g0:
        return BALANCED_SUBCRITICAL
    if params.gamma == 0.0:
        return INDEPENDENT
    if at_max:
        return COLLECTIVE_MAX
    return GENERAL


def analytic_general(params: SystemParams) -> SteadyStateResult:
    """Closed-form steady state for any regular parameter set."""
    validate(params)
    if liouvillian.is_singular_point(params):
        raise SingularRegimeError(
            "generator singular at gamma = gamma_a = gamma_b; "
            "use analytic_balanced_max with an initial rho_dd")
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb, g = params.gamma_a, params.gamma_b, params.gamma
    g0 = _g0(params)
    core = 4 * k**2 * (g0**2 - g**2) + g0**2 * (ga * gb - g**2)
    d = ((g0**2 + 4 * w**2) * core
         + 4 * e**2 * (g0**2 - g**2) * (g0**2 + 4 * k**2))
    if d <= 0:
        raise DomainError("degenerate steady-state denominator; "
                          "the system has no unique steady state")
    p11 = (e**2 + 4 * w**2 + g0**2) * core / d
    p22 = e**2 * ((4 * k**2 + ga**2) * (g0**2 - g**2)
                  + 0.25 * g**2 * (ga - gb)**2) / d
    p33 = e**2 * ((4 * k**2 + gb**2) * (g0**2 - g**2)
                  + 0.25 * g**2 * (ga - gb)**2) / d
    p44 = e**2 * core / d
    rho14 = 1j * e * (g0 + 2j * w) * core / d
    rho23 = (1j * (ga - gb) * e**2 / (4 * d)
             * (8 * k * (g0**2 - g**2) + 1j * g * (ga**2 - gb**2)))
    rho = XDensityMatrix(p11, p22, p33, p44, rho23, rho14)
    return SteadyStateResult(rho=rho, regime=classify_regime(params),
                             denominator=d)


def analytic_independent(params: SystemParams) -> SteadyStateResult:
    """Independent decay, gamma = 0."""
    validate(params)
    if params.gamma != 0.0:
        raise DomainError("independent-decay form requires gamma = 0")
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb = params.gamma_a, params.gamma_b
    g0 = _g0(params)
    d0 = ((4 * k**2 + ga * gb) * (4 * w**2 + g0**2)
          + 4 * e**2 * (4 * k**2 + g0**2))
    if d0 <= 0:
        raise DomainError("degenerate steady-state denominator")
    p11 = (4 * k**2 + ga * gb) * (4 * w**2 + e**2 + g0**2) / d0
    p22 = e**2 * (4 * k**2 + ga**2) / d0
    p33 = e**2 * (4 * k**2 + gb**2) / d0
    p44 = e**2 * (4 * k**2 + ga * gb) / d0
    rho23 = 2j * (ga - gb) * k * e**2 / d0
    rho14 = 1j * e * (4 * k**2 + ga * gb) * (g0 + 2j * w) / d0
    rho = XDensityMatrix(p11, p22, p33, p44, rho23, rho14)
    return SteadyStateResult(rho=rho, regime=INDEPENDENT, denominator=d0)


def analytic_collective_max(params: SystemParams) -> SteadyStateResult:
    """Maximal collective decay, gamma = sqrt(gamma_a*gamma_b), unequal rates."""
    validate(params)
    g0 = _g0(params)
    gmax = math.sqrt(params.gamma_a * params.gamma_b)
    if abs(params.gamma - gmax) > REGIME_RTOL * max(g0, 1e-300):
        raise DomainError("maximal-collective form requires gamma = sqrt(ga*gb)")
    if abs(params.gamma_a - params.gamma_b) <= REGIME_RTOL * g0:
        raise DomainError("maximal-collective closed form requires gamma_a != gamma_b")
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb = params.gamma_a, params.gamma_b
    dt = k**2 * (g0**2 + 4 * w**2) + e**2 * (g0**2 + 4 * k**2)
    if dt <= 0:
        raise DomainError("degenerate steady-state denominator")
    p11 = k**2 * (e**2 + 4 * w**2 + g0**2) / dt
    p22 = e**2 * (2 * k**2 + ga * g0) / (2 * dt)
    p33 = e**2 * (2 * k**2 + gb * g0) / (2 * dt)
    p44 = k**2 * e**2 / dt
    rho14 = 1j * e * k**2 * (g0 + 2j * w) / dt
    rho23 = 1j * e**2 / (2 * dt) * (k * (ga - gb) + 1j * g0 * math.sqrt(ga * gb))
    regime = TRAPPED_KAPPA0 if k == 0.0 else COLLECTIVE_MAX
    rho = XDensityMatrix(p11, p22, p33, p44, rho23, rho14)
    return SteadyStateResult(rho=rho, regime=regime, denominator=dt)


def analytic_balanced(params: SystemParams) -> SteadyStateResult:
    """Balanced decay gamma_a = gamma_b below the critical cross-damping.

    Independent of kappa and of gamma < gamma0.
    """
    validate(params)
    g0 = _g0(params)
    if abs(params.gamma_a - params.gamma_b) > REGIME_RTOL * max(g0, 1e-300):
        raise DomainError("balanced form requires gamma_a = gamma_b")
    if params.gamma >= g0:
        raise DomainError("balanced form requires gamma < gamma0; "
                          "the gamma = gamma0 point is singular")
    w, e = params.omega, params.epsilon
    dp = 4 * e**2 + g0**2 + 4 * w**2
    p11 = (e**2 + g0**2 + 4 * w**2) / dp
    pexc = e**2 / dp
    rho14 = 1j * e * (g0 + 2j * w) / dp
    rho = XDensityMatrix(p11, pexc, pexc, pexc, 0j, rho14)
    return SteadyStateResult(rho=rho, regime=BALANCED_SUBCRITICAL, denominator=dp)


def analytic_balanced_max(params: SystemParams, pdd0: float) -> SteadyStateResult:
    """Singular point gamma = gamma_a = gamma_b: steady state keeps the
    initial antisymmetric population pdd0 and is independent of kappa."""
    validate(params)
    if not liouvillian.is_singular_point(params):
        raise DomainError("requires gamma_a = gamma_b and gamma = gamma0")
    if not 0.0 <= pdd0 <= 1.0:
        raise DomainError("pdd0 must lie in [0, 1]")
    w, e = params.omega, params.epsilon
    g0 = _g0(params)
    dp = 3 * e**2 + g0**2 + 4 * w**2
    rem = 1.0 - pdd0
    p11 = (e**2 + g0**2 + 4 * w**2) / dp * rem
    p22 = 0.5 * (1.0 - (2 * e**2 + g0**2 + 4 * w**2) / dp * rem)
    p44 = e**2 / dp * rem
    rho14 = 1j * e * (g0 + 2j * w) / dp * rem
    rho23 = -0.5 * (1.0 - (4 * e**2 + g0**2 + 4 * w**2) / dp * rem)
    rho = XDensityMatrix(p11, p22, p22, p44, complex(rho23), rho14)
    return SteadyStateResult(rho=rho, regime=BALANCED_COLLECTIVE_MAX,
                             denominator=dp, singular=True, initial_pdd=pdd0)


def numeric_steady(params: SystemParams, pdd0: float | None = None,
                   ode_check_tol: float = 1e-8) -> SteadyStateResult:
    """Dense linear solve of M Y = -P (regular case).

    At the singular point the steady state is the long-time limit of the
    reduced dynamics from an initial state with the given rho_dd; it is
    computed by relaxation and cross-checked against the closed form, the
    two having to agree to `ode_check_tol`.
    """
    validate(params)
    sys = liouvillian.build(params)
    if liouvillian.is_singular_point(params):
        if pdd0 is None:
            raise SingularRegimeError(
                "singular regime: supply the initial rho_dd population pdd0")
        from .dynamics import relax_linear, singular_initial_state
        analytic = analytic_balanced_max(params, pdd0)
        y0 = liouvillian.pack(singular_initial_state(params, pdd0))
        y = relax_linear(sys, y0)
        rho = liouvillian.unpack(y)
        dev = _max_entry_dev(rho, analytic.rho)
        if dev > ode_check_tol:
            raise SingularRegimeError(
                f"relaxed state deviates from closed form by {dev:g}")
        return SteadyStateResult(rho=rho, regime=BALANCED_COLLECTIVE_MAX,
                                 denominator=analytic.denominator,
                                 singular=True, initial_pdd=pdd0)
    y = np.linalg.solve(sys.m, -sys.p)
    rho = liouvillian.unpack(y)
    regime = classify_regime(params)
    return SteadyStateResult(rho=rho, regime=regime,
                             denominator=_regime_denominator(params, regime))


def steady_state(params: SystemParams, pdd0: float | None = None) -> SteadyStateResult:
    """Closed-form steady state dispatched on the regime."""
    regime = classify_regime(params)
    if regime == BALANCED_COLLECTIVE_MAX:
        if pdd0 is None:
            raise MissingInitialCondition(
                "singular regime: supply the initial rho_dd population pdd0")
        return analytic_balanced_max(params, pdd0)
    return analytic_general(params)


def _regime_denominator(params: SystemParams, regime: str) -> float:
    """The applicable closed-form denominator for a regular regime."""
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb, g = params.gamma_a, params.gamma_b, params.gamma
    g0 = _g0(params)
    if regime == INDEPENDENT:
        return ((4 * k**2 + ga * gb) * (4 * w**2 + g0**2)
                + 4 * e**2 * (4 * k**2 + g0**2))
    if regime in (COLLECTIVE_MAX, TRAPPED_KAPPA0):
        return k**2 * (g0**2 + 4 * w**2) + e**2 * (g0**2 + 4 * k**2)
    if regime == BALANCED_SUBCRITICAL:
        return 4 * e**2 + g0**2 + 4 * w**2
    core = 4 * k**2 * (g0**2 - g**2) + g0**2 * (ga * gb - g**2)
    return ((g0**2 + 4 * w**2) * core
            + 4 * e**2 * (g0**2 - g**2) * (g0**2 + 4 * k**2))


def _max_entry_dev(a: XDensityMatrix, b: XDensityMatrix) -> float:
    return max(abs(a.p11 - b.p11), abs(a.p22 - b.p22), abs(a.p33 - b.p33),
               abs(a.p44 - b.p44), abs(a.rho23 - b.rho23), abs(a.rho14 - b.rho14))


def max_deviation(a: XDensityMatrix, b: XDensityMatrix) -> float:
    """Largest absolute entry-wise deviation between two X states."""
    return _max_entry_dev(a, b)


def csv_row(result: SteadyStateResult):
    return (result.regime, result.denominator, int(result.singular),
            *result.rho.csv_row())
