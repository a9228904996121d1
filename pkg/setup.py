import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QUDIT_EPI_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "qudit_epi._kernels._compiled",
                    ["src/qudit_epi/_kernels/_compiled.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython available: install the pure-python backend only.
        ext_modules = []

setup(ext_modules=ext_modules)
