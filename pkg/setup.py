import sys

from setuptools import Extension, setup

# The compiled kernels are an optimization, never a requirement: puiseux.kernels
# falls back to the pure-Python implementation when the extension is missing.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("puiseux._kernels", ["src/puiseux/_kernels.pyx"])],
        language_level="3",
    )
except ImportError:
    print("cython not available, skipping compiled kernels", file=sys.stderr)

setup(ext_modules=ext_modules)
