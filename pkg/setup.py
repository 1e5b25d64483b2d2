"""Build shim for the optional compiled core.

The package is fully functional without the extension (the pure-Python
core is selected at import time); building it just makes the enumeration
and chain-cover kernels fast enough for the large random-graph batches.
If Cython or a C compiler is unavailable the install proceeds pure-only.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "indcube._fastcore",
                ["src/indcube/_fastcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
