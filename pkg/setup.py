"""Build script: compiles the optional GF(p) kernel extension.

The package works without the extension (a pure-Python twin of the kernel
module is selected at import time), so a failed or skipped compilation is
not fatal to installation.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("QUADFACTOR_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "quadfactor.kernels._gf_fast",
        ["src/quadfactor/kernels/_gf_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
