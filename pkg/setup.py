"""Builds the optional compiled kernel core.

The package works without it (a numpy fallback is selected at import time),
but the gradient-flow experiments are an order of magnitude faster with the
extension compiled.
"""

import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    if not os.path.exists("src/unmono/kernels/_core.pyx"):
        raise ImportError("kernel source not present")
    extensions = cythonize(
        [
            Extension(
                "unmono.kernels._core",
                ["src/unmono/kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
