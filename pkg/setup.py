"""Build script: compiles the optional Cython kernel extension when Cython is
available; the package falls back to the pure-Python kernels otherwise."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/resnewt/_kernels.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
