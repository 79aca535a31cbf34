"""Timing comparison of the compiled RK4 kernels against the pure-numpy
fallback.  Run as a script:

    python3 benchmarks/compare_backends.py

The workload mirrors real use: long fixed-step integrations of the
7-variable linear system and of the 16-dimensional vectorized Fock master
equation with the oscillating drive.
"""

import time

import numpy as np

from modecoupler import _kernels
from modecoupler._kernels import _fallback
from modecoupler import liouvillian
from modecoupler.dynamics import fock_superoperators, vacuum_fock
from modecoupler.params import make_params

PARAMS = make_params(omega=1.0, kappa=0.8, epsilon=0.4,
                     gamma_a=0.2, gamma_b=0.05, gamma=0.06)


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"selected backend: {_kernels.BACKEND}")
    sys = liouvillian.build(PARAMS)
    y0 = np.zeros(7)
    y0[0] = 1.0
    n_steps = 200_000
    dt = 1e-3

    cases = [("affine_rk4 7-var, 2e5 steps",
              lambda k: k.affine_rk4(sys.m, sys.p, y0, dt, n_steps, n_steps))]

    s0, s1, s2 = fock_superoperators(PARAMS, 1)
    v0 = vacuum_fock(1).rho.reshape(-1)
    cases.append(("trig_rk4 16-dim complex, 2e4 steps",
                  lambda k: k.trig_rk4(s0, s1, s2, 2 * PARAMS.omega, v0,
                                       0.0, dt, 20_000, 20_000)))

    for name, fn in cases:
        t_py = _time(lambda: fn(_fallback))
        print(f"{name}")
        print(f"  python   {t_py * 1e3:9.2f} ms")
        if _kernels.BACKEND == "native":
            t_nat = _time(lambda: fn(_kernels))
            print(f"  native   {t_nat * 1e3:9.2f} ms   "
                  f"speedup x{t_py / t_nat:.1f}")
            ref = fn(_fallback)[-1]
            got = fn(_kernels)[-1]
            print(f"  max result deviation {np.max(np.abs(ref - got)):.3g}")
        else:
            print("  native kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
