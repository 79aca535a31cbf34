"""Linear evolution generator dY/dt = M Y + P for the X-state variables.

Packing convention (components 1..7, stored zero-based):
    Y1 = rho11, Y2 = rho22, Y3 = rho33,
    Y4 = rho23 + rho32,  Y5 = i(rho23 - rho32),
    Y6 = rho14 + rho41,  Y7 = i(rho14 - rho41).
rho44 is recovered from the trace closure 1 - Y1 - Y2 - Y3.

Two independent codings of the generator are provided: `build` transcribes
the printed closed-form matrix, `build_from_equations` packs the
element-wise equations of motion. A test asserts they coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import SystemParams, gamma0 as _gamma0, validate
from .statespace import BdDensity, XDensityMatrix

_SINGULAR_SVTOL = 1e-10


@dataclass(frozen=True)
class LinearSystem:
    m: np.ndarray  # (7, 7) real
    p: np.ndarray  # (7,) real
    params: SystemParams

    def __post_init__(self):
        self.m.setflags(write=False)
        self.p.setflags(write=False)


@dataclass(frozen=True)
class SingularityReport:
    singular: bool
    conserved: str | None  # "rho_dd" at the balanced maximal-collective point
    sv_ratio: float


@dataclass(frozen=True)
class ReducedSystem:
    """Affine generator in the {|1>, |b>, |d>, |4>} basis, valid only for
    gamma_a = gamma_b and gamma = gamma0.  Real state vector:
    (rho_dd, rho_bb, Re rho_bd, Im rho_bd, rho_11, Re rho_14, Im rho_14);
    the rho_dd row is identically zero (conserved sector)."""
    m: np.ndarray  # (7, 7)
    p: np.ndarray  # (7,)
    params: SystemParams


def build(params: SystemParams) -> LinearSystem:
    """Transcription of the printed 7x7 coefficient matrix and drive."""
    validate(params)
    w, k, e = params.omega, params.kappa, params.epsilon
    ga, gb, g = params.gamma_a, params.gamma_b, params.gamma
    g0 = _gamma0(params)
    m = np.array([
        [0.0,      gb,       ga,       g,        0.0,  0.0,    e],
        [-ga,      -2 * g0,  -ga,      -g / 2,   k,    0.0,    0.0],
        [-gb,      -gb,      -2 * g0,  -g / 2,   -k,   0.0,    0.0],
        [-2 * g,   -3 * g,   -3 * g,   -g0,      0.0,  0.0,    0.0],
        [0.0,      -2 * k,   2 * k,    0.0,      -g0,  0.0,    0.0],
        [0.0,      0.0,      0.0,      0.0,      0.0,  -g0,    2 * w],
        [-4 * e,   -2 * e,   -2 * e,   0.0,      0.0,  -2 * w, -g0],
    ])
    p = np.array([0.0, ga, gb, 2 * g, 0.0, 0.0, 2 * e])
    return LinearSystem(m=m, p=p, params=params)


def eom_rhs(params: SystemParams, rho: XDensityMatrix) -> XDensityMatrix:
    """Element-wise equations of motion for the X-state entries.

    Returns the time derivative as an XDensityMatrix container (its trace
    is the derivative of the trace, i.e. zero up to rounding).
    """
    ga, gb, g = params.gamma_a, params.gamma_b, params.gamma
    k, e, w = params.kappa, params.epsilon, params.omega
    g0 = _gamma0(params)
    r23, r32 = rho.rho23, np.conj(rho.rho23)
    r14, r41 = rho.rho14, np.conj(rho.rho14)
    d11 = (gb * rho.p22 + ga * rho.p33 + g * (r23 + r32)
           + 1j * e * (r14 - r41)).real
    d22 = (ga - 2 * g0 * rho.p22 - ga * (rho.p11 + rho.p33)
           - 0.5 * (g - 2j * k) * r23 - 0.5 * (g + 2j * k) * r32).real
    d33 = (gb - 2 * g0 * rho.p33 - gb * (rho.p11 + rho.p22)
           - 0.5 * (g + 2j * k) * r23 - 0.5 * (g - 2j * k) * r32).real
    d23 = (g - g0 * r23 - g * (rho.p11 + rho.p22 + rho.p33)
           - 0.5 * (g - 2j * k) * rho.p22 - 0.5 * (g + 2j * k) * rho.p33)
    d14 = (-1j * e - (g0 - 2j * w) * r14
           + 1j * e * (2 * rho.p11 + rho.p22 + rho.p33))
    return XDensityMatrix(p11=d11, p22=d22, p33=d33,
                          p44=-(d11 + d22 + d33), rho23=d23, rho14=d14)


def build_from_equations(params: SystemParams) -> LinearSystem:
    """Generator assembled by packing the element-wise equations of motion;
    independent of the printed-matrix transcription in `build`."""
    validate(params)
    p = pack(eom_rhs(params, XDensityMatrix(0.0, 0.0, 0.0, 0.0)))
    m = np.empty((7, 7))
    for j in range(7):
        y = np.zeros(7)
        y[j] = 1.0
        rho = _unpack_raw(y)
        m[:, j] = pack(eom_rhs(params, rho)) - p
    return LinearSystem(m=m, p=p, params=params)


def pack(rho: XDensityMatrix) -> np.ndarray:
    return np.array([
        rho.p11, rho.p22, rho.p33,
        2.0 * rho.rho23.real, -2.0 * rho.rho23.imag,
        2.0 * rho.rho14.real, -2.0 * rho.rho14.imag,
    ])


def _unpack_raw(y) -> XDensityMatrix:
    """Unpack without the trace closure (p44 = 0); used to probe columns."""
    return XDensityMatrix(p11=y[0], p22=y[1], p33=y[2], p44=0.0,
                          rho23=0.5 * (y[3] - 1j * y[4]),
                          rho14=0.5 * (y[5] - 1j * y[6]))


def unpack(y) -> XDensityMatrix:
    """Inverse of pack; p44 is recovered from the trace closure."""
    return XDensityMatrix(p11=y[0], p22=y[1], p33=y[2],
                          p44=1.0 - y[0] - y[1] - y[2],
                          rho23=0.5 * (y[3] - 1j * y[4]),
                          rho14=0.5 * (y[5] - 1j * y[6]))


def rhs(sys: LinearSystem, y: np.ndarray) -> np.ndarray:
    return sys.m @ y + sys.p


def singularity(sys: LinearSystem) -> SingularityReport:
    """SVD rank test of M.

    The generator is singular exactly at the balanced maximal-collective
    point (gamma = sqrt(gamma_a*gamma_b) with gamma_a = gamma_b), where the
    antisymmetric single-excitation population rho_dd is conserved.  An SVD
    threshold is used instead of the determinant, which scales badly with
    the rate magnitudes.
    """
    sv = np.linalg.svd(sys.m, compute_uv=False)
    ratio = sv[-1] / sv[0] if sv[0] > 0 else 0.0
    singular = ratio < _SINGULAR_SVTOL
    return SingularityReport(singular=singular,
                             conserved="rho_dd" if singular else None,
                             sv_ratio=ratio)


def is_singular_point(params: SystemParams, rtol: float = 1e-12) -> bool:
    """Parameter-space test for the balanced maximal-collective point."""
    g0 = _gamma0(params)
    if g0 <= 0:
        return False
    balanced = abs(params.gamma_a - params.gamma_b) <= rtol * g0
    collective_max = abs(params.gamma - np.sqrt(params.gamma_a * params.gamma_b)) <= rtol * g0
    return balanced and collective_max


def build_reduced(params: SystemParams, rtol: float = 1e-12) -> ReducedSystem:
    """Generator in the {|1>, |b>, |d>, |4>} basis at the singular point."""
    g0 = _gamma0(params)
    if not is_singular_point(params, rtol):
        raise DomainError(
            "reduced system requires gamma_a = gamma_b and gamma = gamma0")
    k, e, w = params.kappa, params.epsilon, params.omega
    # state: (dd, bb, re_bd, im_bd, p11, re14, im14)
    m = np.zeros((7, 7))
    p = np.zeros(7)
    # rho_dd row identically zero
    # rho_bb' = 2 g0 rho_44 - 2 g0 bb with the closure
    # rho_44 = 1 - dd - bb - p11 eliminated
    m[1, 0] = -2 * g0
    m[1, 1] = -4 * g0
    m[1, 4] = -2 * g0
    p[1] = 2 * g0
    # rho_bd' = -(g0 + 2 i k) rho_bd
    m[2, 2], m[2, 3] = -g0, 2 * k
    m[3, 2], m[3, 3] = -2 * k, -g0
    # rho_11' = 2 g0 bb - 2 e Im rho14
    m[4, 1] = 2 * g0
    m[4, 6] = -2 * e
    # rho_14' = -i e - (g0 - 2 i w) rho14 + i e (2 p11 + bb + dd)
    m[5, 5], m[5, 6] = -g0, -2 * w
    m[6, 5], m[6, 6] = 2 * w, -g0
    m[6, 0], m[6, 1], m[6, 4] = e, e, 2 * e
    p[6] = -e
    return ReducedSystem(m=m, p=p, params=params)


def pack_bd(bd: BdDensity, rho14: complex = 0j) -> np.ndarray:
    return np.array([bd.p_dd, bd.p_bb, bd.rho_bd.real, bd.rho_bd.imag,
                     bd.p11, rho14.real, rho14.imag])


def unpack_bd(v) -> tuple[BdDensity, complex]:
    p44 = 1.0 - v[0] - v[1] - v[4]
    bd = BdDensity(p11=v[4], p_bb=v[1], p_dd=v[0], p44=p44,
                   rho_bd=complex(v[2], v[3]))
    return bd, complex(v[5], v[6])


def dump_csv(sys: LinearSystem, path) -> None:
    """Debug dump of M (7 rows) followed by P (1 row) for external checks."""
    with open(path, "w") as fh:
        for row in sys.m:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
        fh.write(",".join(f"{v:.17g}" for v in sys.p) + "\n")
