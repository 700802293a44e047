"""Build the optional Cython kernels; the package falls back to pure Python."""

import os

from setuptools import Extension, setup

CFLAGS = ["-O3"]

ext_modules = []
if not os.environ.get("SOCODES_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "socodes._kernels",
                    ["src/socodes/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=CFLAGS,
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
