"""Build script for the optional compiled kernel core.

The package is pure Python; when Cython is available the sparse-row and
pattern-word kernels are also compiled as permod._speedups, which
permod.kernels picks up at import time.  Without Cython the build still
succeeds and the pure twins are used.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("permod._speedups", ["src/permod/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
