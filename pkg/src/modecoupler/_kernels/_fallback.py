"""Pure-numpy RK4 kernels; reference semantics for the compiled extension."""

import numpy as np


def affine_rk4(m, p, y0, dt, n_steps, sample_every):
    m = np.asarray(m, dtype=float)
    p = np.asarray(p, dtype=float)
    y = np.array(y0, dtype=float)
    if n_steps % sample_every:
        raise ValueError("n_steps must be a multiple of sample_every")
    out = np.empty((n_steps // sample_every + 1, y.size))
    out[0] = y
    idx = 1
    h = dt
    for step in range(n_steps):
        k1 = m @ y + p
        k2 = m @ (y + 0.5 * h * k1) + p
        k3 = m @ (y + 0.5 * h * k2) + p
        k4 = m @ (y + h * k3) + p
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (step + 1) % sample_every == 0:
            out[idx] = y
            idx += 1
    return out


def trig_rk4(s0, s1, s2, two_omega, y0, t0, dt, n_steps, sample_every):
    s0 = np.asarray(s0, dtype=complex)
    s1 = np.asarray(s1, dtype=complex)
    s2 = np.asarray(s2, dtype=complex)
    y = np.array(y0, dtype=complex)
    if n_steps % sample_every:
        raise ValueError("n_steps must be a multiple of sample_every")

    def f(t, v):
        return (s0 + np.cos(two_omega * t) * s1 + np.sin(two_omega * t) * s2) @ v

    out = np.empty((n_steps // sample_every + 1, y.size), dtype=complex)
    out[0] = y
    idx = 1
    h = dt
    for step in range(n_steps):
        t = t0 + step * h
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (step + 1) % sample_every == 0:
            out[idx] = y
            idx += 1
    return out
