"""Build shim: compiles the optional Cython kernel.

The package is fully functional without the extension; qmatroid.kernel falls
back to the pure-Python implementation when qmatroid._core is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qmatroid._core",
                ["src/qmatroid/_core.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
