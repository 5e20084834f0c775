"""Optional compiled kernel build.

The package is pure Python; if Cython and a C compiler are available the
chord-interleaving kernel is compiled, otherwise the pure fallback is used.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/trisections/_kernels.pyx"],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
