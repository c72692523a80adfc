import numpy
from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ggt._core._speedups", ["src/ggt/_core/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python fallback is selected at import time; the wheel still works.
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[numpy.get_include()])
