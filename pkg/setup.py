"""Build script: compiles the Cython kernel twin when a toolchain is present.

The package is fully functional without the extension; backend.py falls back
to the pure-Python kernels at import time.  Keeping the extension optional
means `pip install` never fails on a box without a C compiler.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(
            [Extension("singtunnel._kernels_cy", ["src/singtunnel/_kernels_cy.pyx"])],
            language_level=3,
        )
    except Exception as exc:  # noqa: BLE001 - any cythonize failure downgrades to pure python
        print(f"singtunnel: skipping compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
