"""X-structured density matrix on the four-state basis
|1> = |0_A 0_B>, |2> = |0_A 1_B>, |3> = |1_A 0_B>, |4> = |1_A 1_B>,
and the symmetric/antisymmetric (|b>, |d>) view of the single-excitation
block.

From a vacuum initial condition only the four populations and the
coherences rho23 (one photon) and rho14 (two photon) ever become nonzero,
so the state is stored in X form.  A dense 4x4 view is provided for
eigen-checks and for comparison with the truncated-Fock oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CSV_COLUMNS = ("p11", "p22", "p33", "p44",
               "re_rho23", "im_rho23", "re_rho14", "im_rho14")


@dataclass(frozen=True)
class XDensityMatrix:
    p11: float
    p22: float
    p33: float
    p44: float
    rho23: complex = 0j
    rho14: complex = 0j

    def trace(self) -> float:
        return self.p11 + self.p22 + self.p33 + self.p44

    def to_dense(self) -> np.ndarray:
        """Full 4x4 complex matrix (Hermitian by construction)."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = (
            self.p11, self.p22, self.p33, self.p44)
        rho[1, 2] = self.rho23
        rho[2, 1] = np.conj(self.rho23)
        rho[0, 3] = self.rho14
        rho[3, 0] = np.conj(self.rho14)
        return rho

    def validate(self, trace_tol: float = 1e-12, pos_tol: float = 1e-9):
        """Trace closure, non-negative populations and X-block positivity.

        For an X state positivity is equivalent to the two 2x2 block
        conditions p22*p33 >= |rho23|^2 and p11*p44 >= |rho14|^2, so no
        eigensolve is needed.
        """
        if abs(self.trace() - 1.0) > trace_tol:
            raise DomainError(f"trace = {self.trace()!r} differs from 1")
        for name in ("p11", "p22", "p33", "p44"):
            if getattr(self, name) < -pos_tol:
                raise DomainError(f"population {name} = {getattr(self, name)!r} < 0")
        if self.p22 * self.p33 < abs(self.rho23) ** 2 - pos_tol:
            raise DomainError("one-photon block violates positivity")
        if self.p11 * self.p44 < abs(self.rho14) ** 2 - pos_tol:
            raise DomainError("two-photon block violates positivity")
        return self

    def csv_row(self):
        return (self.p11, self.p22, self.p33, self.p44,
                self.rho23.real, self.rho23.imag,
                self.rho14.real, self.rho14.imag)

    @classmethod
    def from_csv_row(cls, row):
        vals = [float(v) for v in row]
        return cls(vals[0], vals[1], vals[2], vals[3],
                   complex(vals[4], vals[5]), complex(vals[6], vals[7]))


@dataclass(frozen=True)
class BdDensity:
    p11: float
    p_bb: float
    p_dd: float
    p44: float
    rho_bd: complex = 0j

    def trace(self) -> float:
        return self.p11 + self.p_bb + self.p_dd + self.p44


def vacuum() -> XDensityMatrix:
    return XDensityMatrix(1.0, 0.0, 0.0, 0.0)


def _bd_weights(gamma_a: float, gamma_b: float):
    two_g0 = gamma_a + gamma_b
    if two_g0 <= 0:
        raise DomainError("b/d basis requires gamma_a + gamma_b > 0")
    return gamma_a / two_g0, gamma_b / two_g0, math.sqrt(gamma_a * gamma_b) / two_g0


def to_bd(rho: XDensityMatrix, gamma_a: float, gamma_b: float) -> BdDensity:
    """Rotate the single-excitation block to the superposition basis
    |b> = (sqrt(gA)|3> + sqrt(gB)|2>)/sqrt(2 gamma0),
    |d> = (sqrt(gB)|3> - sqrt(gA)|2>)/sqrt(2 gamma0).
    """
    wa, wb, wx = _bd_weights(gamma_a, gamma_b)
    p_bb = wa * rho.p33 + wb * rho.p22 + 2.0 * wx * rho.rho23.real
    p_dd = wb * rho.p33 + wa * rho.p22 - 2.0 * wx * rho.rho23.real
    rho_bd = (wx * (rho.p33 - rho.p22) + wb * rho.rho23
              - wa * np.conj(rho.rho23))
    return BdDensity(p11=rho.p11, p_bb=p_bb, p_dd=p_dd, p44=rho.p44,
                     rho_bd=rho_bd)


def from_bd(bd: BdDensity, gamma_a: float, gamma_b: float,
            rho14: complex = 0j) -> XDensityMatrix:
    """Inverse of to_bd; rho14 passes through the rotation unchanged."""
    wa, wb, wx = _bd_weights(gamma_a, gamma_b)
    two_re_bd = 2.0 * bd.rho_bd.real
    p22 = wb * bd.p_bb + wa * bd.p_dd - wx * two_re_bd
    p33 = wa * bd.p_bb + wb * bd.p_dd + wx * two_re_bd
    rho23 = (wx * (bd.p_bb - bd.p_dd) + wb * bd.rho_bd
             - wa * np.conj(bd.rho_bd))
    return XDensityMatrix(p11=bd.p11, p22=p22, p33=p33, p44=bd.p44,
                          rho23=rho23, rho14=rho14)
