"""Builds the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("spherecolor._kernels", ["src/spherecolor/_kernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
