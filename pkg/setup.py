"""Build script: compiles the Cython kernel extension when possible.

The package works without the extension (a pure-Python twin is selected at
import time), so any failure here degrades to a source-only install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "cyclorips._kernels._compiled",
                ["src/cyclorips/_kernels/_compiled.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - fall back to pure python install
    print(f"cyclorips: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
