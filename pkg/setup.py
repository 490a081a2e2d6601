"""Build hook for the optional compiled elimination kernel.

The package is pure Python except for one Cython module holding the sparse
integer elimination inner loops.  If Cython or a C compiler is unavailable the
install still succeeds and the package falls back to the pure implementation
at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "strathodge._kernels._ratref",
                ["src/strathodge/_kernels/_ratref.pyx"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
