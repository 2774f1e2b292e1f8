"""Build shim: compiles the optional Cython kernel for the toy machine.

If Cython or a C compiler is unavailable the package still installs; the
pure-Python twin in jointcert._machine_py is selected at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("jointcert._machine_cy", ["src/jointcert/_machine_cy.pyx"])],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"jointcert: skipping compiled kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
