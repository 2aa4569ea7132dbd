"""Build script for the compiled fixpoint kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing compiler only costs speed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/simrex/_simcore.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
