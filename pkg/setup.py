"""Build script: compiles the enumeration kernels when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so the build degrades gracefully on machines without a
compiler toolchain.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "sparsebound._core",
                ["src/sparsebound/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
