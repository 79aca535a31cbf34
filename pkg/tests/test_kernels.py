import numpy as np
import pytest

from modecoupler import _kernels
from modecoupler._kernels import _fallback
from modecoupler import liouvillian as lv
from modecoupler.params import make_params
from modecoupler.dynamics import fock_superoperators

PARAMS = make_params(omega=1, kappa=0.8, epsilon=0.4,
                     gamma_a=0.2, gamma_b=0.05, gamma=0.06)


def test_backend_reports_flavor():
    assert _kernels.BACKEND in ("native", "python")


def test_affine_sampling_shape():
    sys = lv.build(PARAMS)
    y0 = np.zeros(7)
    y0[0] = 1.0
    out = _fallback.affine_rk4(sys.m, sys.p, y0, 1e-3, 1000, 100)
    assert out.shape == (11, 7)
    assert np.array_equal(out[0], y0)
    with pytest.raises(ValueError):
        _fallback.affine_rk4(sys.m, sys.p, y0, 1e-3, 1001, 100)


@pytest.mark.skipif(_kernels.BACKEND != "native",
                    reason="only one backend available")
def test_affine_backends_agree():
    sys = lv.build(PARAMS)
    y0 = np.zeros(7)
    y0[0] = 1.0
    a = _kernels.affine_rk4(sys.m, sys.p, y0, 1e-3, 5000, 500)
    b = _fallback.affine_rk4(sys.m, sys.p, y0, 1e-3, 5000, 500)
    assert a.shape == b.shape
    # same arithmetic, same order of operations: bitwise or near-bitwise
    assert np.max(np.abs(a - b)) < 1e-14


@pytest.mark.skipif(_kernels.BACKEND != "native",
                    reason="only one backend available")
def test_trig_backends_agree():
    s0, s1, s2 = fock_superoperators(PARAMS, 1)
    d = s0.shape[0]
    y0 = np.zeros(d, dtype=complex)
    y0[0] = 1.0
    a = _kernels.trig_rk4(s0, s1, s2, 2.0, y0, 0.0, 2e-3, 1000, 250)
    b = _fallback.trig_rk4(s0, s1, s2, 2.0, y0, 0.0, 2e-3, 1000, 250)
    assert a.shape == b.shape == (5, d)
    assert np.max(np.abs(a - b)) < 1e-13


def test_trig_matches_dense_reference():
    # one step of the time-dependent RK4 against a direct transcription
    s0, s1, s2 = fock_superoperators(PARAMS, 1)
    rng = np.random.default_rng(1)
    y0 = rng.normal(size=s0.shape[0]) + 1j * rng.normal(size=s0.shape[0])
    dt, w2 = 1.5e-3, 2.0

    def sup(t):
        return s0 + np.cos(w2 * t) * s1 + np.sin(w2 * t) * s2

    k1 = sup(0.0) @ y0
    k2 = sup(dt / 2) @ (y0 + dt / 2 * k1)
    k3 = sup(dt / 2) @ (y0 + dt / 2 * k2)
    k4 = sup(dt) @ (y0 + dt * k3)
    expect = y0 + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    got = _kernels.trig_rk4(s0, s1, s2, w2, y0, 0.0, dt, 1, 1)[-1]
    assert np.max(np.abs(got - expect)) < 1e-14
