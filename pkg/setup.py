"""Build script: compiles the evaluation kernel when a toolchain is present.

The package is fully functional without the extension (a pure-Python twin
is selected at import); set FOLI_PURE_PYTHON=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FOLI_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("foli._kernel", ["src/foli/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
