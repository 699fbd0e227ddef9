"""Builds the optional Cython kernels; the package falls back to pure Python without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SCATTERDIAG_NO_EXT", "0") == "0":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("scatterdiag._ckernels", ["src/scatterdiag/_ckernels.pyx"], optional=True)],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
