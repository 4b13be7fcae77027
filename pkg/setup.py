"""Build script: compiles the optional kernel extension.

The package is fully functional without the extension (a pure-Python twin
is selected at import time), so compilation failures are non-fatal.  Set
BAYESFLIP_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import setup


def _extensions():
    if os.environ.get("BAYESFLIP_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "bayesflip._kernels._core",
        ["src/bayesflip/_kernels/_core.pyx"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())
