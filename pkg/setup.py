"""Build script.

The compiled kernel (charkit._speedups) is optional: when Cython or a C
compiler is unavailable the package installs without it and the pure-Python
kernels in charkit._pure are used instead.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("charkit._speedups", ["src/charkit/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
