import os

import numpy as np
from setuptools import Extension, setup

# QUOTAPOWER_PURE=1 skips the native kernels; the package then runs on the
# pure-Python fallback.
ext_modules = []
if not os.environ.get("QUOTAPOWER_PURE"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "quotapower._kernels",
                ["src/quotapower/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
