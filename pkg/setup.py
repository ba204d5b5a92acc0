"""Build script: compiles the optional Cython kernel backend.

The package is fully functional without the extension (a pure-Python
twin of every kernel ships in grossum._kernels_py); the extension is a
drop-in speedup selected at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "grossum._kernels_cy",
                ["src/grossum/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
