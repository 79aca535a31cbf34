"""Fixed-step RK4 propagation kernels.

The compiled extension is preferred when available; otherwise a numpy
implementation with identical semantics is used.  Both expose

    affine_rk4(m, p, y0, dt, n_steps, sample_every)
        dy/dt = m @ y + p, real.
    trig_rk4(s0, s1, s2, two_omega, y0, t0, dt, n_steps, sample_every)
        dy/dt = (s0 + cos(two_omega*t)*s1 + sin(two_omega*t)*s2) @ y, complex.

Both return the sampled states including the initial one, shape
(n_steps // sample_every + 1, n).  n_steps must be a multiple of
sample_every.
"""

try:
    from ._native import affine_rk4, trig_rk4
    BACKEND = "native"
except ImportError:  # pragma: no cover - depends on build environment
    from ._fallback import affine_rk4, trig_rk4
    BACKEND = "python"

__all__ = ["affine_rk4", "trig_rk4", "BACKEND"]
