"""Build glue for the compiled GF kernels.

The extension is optional: if Cython or a C compiler is missing the package
installs anyway and falls back to the numpy backend at import time.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "agdec.backend._core",
                ["src/agdec/backend/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
