"""Two strongly coupled dissipative bosonic modes with resonant and
antiresonant couplings: steady states, dynamics, interference visibility,
concurrence and photon statistics."""

__version__ = "0.1.0"

from ._kernels import BACKEND as kernel_backend  # noqa: F401
