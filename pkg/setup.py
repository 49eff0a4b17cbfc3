import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the NumPy kernels take over
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("STFTINV_NO_EXTENSION"):
    extensions = [
        Extension(
            "stftinv._ckernels",
            ["src/stftinv/_ckernels.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
            optional=True,
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
