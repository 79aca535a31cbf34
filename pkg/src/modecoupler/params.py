"""Physical parameters of the coupled-mode model and derived rate ratios.

Conventions: omega is the common mode frequency, kappa the linear
(beam-splitter) coupling, epsilon the antiresonant (parametric) coupling,
gamma_a / gamma_b the local damping rates and gamma the cross-damping rate
of the common reservoir.  All values are raw angular rates; nothing is
silently normalized to omega.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .errors import DomainError

# slack for the Cauchy-Schwarz bound gamma^2 <= gamma_a*gamma_b, so that
# gamma = sqrt(gamma_a*gamma_b) computed in floating point is accepted
_CS_RTOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    omega: float
    kappa: float = 0.0
    epsilon: float = 0.0
    gamma_a: float = 0.0
    gamma_b: float = 0.0
    gamma: float = 0.0
    theta: float | None = None  # metadata only once gamma is resolved


@dataclass(frozen=True)
class DerivedRates:
    gamma0: float
    gamma_d: float
    ratio_r: float
    ratio_u: float


def collective_rate(gamma_a: float, gamma_b: float, theta: float) -> float:
    """Cross-damping rate sqrt(gamma_a*gamma_b)*cos(theta)."""
    if gamma_a < 0 or gamma_b < 0:
        raise DomainError("damping rates must be non-negative")
    if not 0.0 <= theta <= math.pi / 2:
        raise DomainError("theta must lie in [0, pi/2]")
    c = math.cos(theta)
    if abs(c) < 1e-15:  # snap the orthogonal-reservoir endpoint to zero
        c = 0.0
    return math.sqrt(gamma_a * gamma_b) * c


def make_params(omega, kappa=0.0, epsilon=0.0, gamma_a=0.0, gamma_b=0.0,
                gamma=None, theta=None) -> SystemParams:
    """Build and validate a parameter set.

    gamma may be given directly or derived from the polarization angle
    theta; an explicit gamma wins and theta is kept as metadata only.
    With neither given the modes decay independently (gamma = 0).
    """
    if gamma is None:
        gamma = collective_rate(gamma_a, gamma_b, theta) if theta is not None else 0.0
    return validate(SystemParams(float(omega), float(kappa), float(epsilon),
                                 float(gamma_a), float(gamma_b), float(gamma),
                                 None if theta is None else float(theta)))


def validate(params: SystemParams) -> SystemParams:
    """Check all parameter invariants; returns the params unchanged."""
    for name in ("omega", "kappa", "epsilon", "gamma_a", "gamma_b", "gamma"):
        value = getattr(params, name)
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
    if params.omega <= 0:
        raise DomainError("omega must be strictly positive")
    for name in ("kappa", "epsilon", "gamma_a", "gamma_b"):
        if getattr(params, name) < 0:
            raise DomainError(f"{name} must be non-negative")
    bound = params.gamma_a * params.gamma_b
    if params.gamma ** 2 > bound * (1.0 + _CS_RTOL) + 1e-300:
        raise DomainError(
            f"gamma^2 = {params.gamma**2:g} exceeds gamma_a*gamma_b = {bound:g}")
    if params.theta is not None and not 0.0 <= params.theta <= math.pi / 2:
        raise DomainError("theta must lie in [0, pi/2]")
    return params


def derive(params: SystemParams) -> DerivedRates:
    """Mean/half-difference damping and the dimensionless ratios R, u."""
    gamma0 = (params.gamma_a + params.gamma_b) / 2.0
    gamma_d = (params.gamma_a - params.gamma_b) / 2.0
    if gamma0 == 0.0:
        raise DomainError("ratios R and u are undefined at gamma0 = 0")
    return DerivedRates(gamma0=gamma0, gamma_d=gamma_d,
                        ratio_r=params.kappa / gamma0,
                        ratio_u=gamma_d / gamma0)


def gamma0(params: SystemParams) -> float:
    return (params.gamma_a + params.gamma_b) / 2.0


def gamma_d(params: SystemParams) -> float:
    return (params.gamma_a - params.gamma_b) / 2.0


_JSON_KEYS = {"omega", "kappa", "epsilon", "gamma_a", "gamma_b", "theta", "gamma"}


def from_json(path) -> SystemParams:
    """Load parameters from a JSON file; unknown keys are rejected."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError("parameter file must contain a JSON object")
    unknown = set(data) - _JSON_KEYS
    if unknown:
        raise DomainError(f"unknown parameter keys: {sorted(unknown)}")
    if "omega" not in data:
        raise DomainError("parameter file must define omega")
    return make_params(**data)


def with_updates(params: SystemParams, **kwargs) -> SystemParams:
    """Copy with some fields replaced, then re-validate."""
    return validate(replace(params, **kwargs))
