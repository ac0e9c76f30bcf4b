"""Builds the optional compiled kernel extension.

The package is pure Python by default; when Cython and a C compiler are
available the hot token-level kernels (Porter stemming, lexicon scoring,
posterior accumulation) are compiled to `sentilens._kernels_c` and picked
up automatically at import.  Set SENTILENS_NO_EXT=1 to skip the build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SENTILENS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "sentilens._kernels_c",
                    ["src/sentilens/_kernels_c.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )

setup(ext_modules=ext_modules)
