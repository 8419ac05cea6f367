"""Builds the optional compiled kernels; the package works without them."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GUARDLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize([Extension("guardlab._kernels", ["src/guardlab/_kernels.pyx"])],
                                language_level=3, quiet=True)

setup(ext_modules=ext_modules)
