"""Build script: compiles the optional RK4 kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only costs speed.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "modecoupler._kernels._native",
        ["src/modecoupler/_kernels/_native.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


try:
    setup(ext_modules=extensions())
except Exception as exc:  # pragma: no cover - compiler missing on target host
    print(f"extension build failed ({exc}); installing pure-python fallback",
          file=sys.stderr)
    setup(ext_modules=[])
