# Builds the optional compiled kernels. Without Cython the package installs
# pure-Python and falls back to the numpy implementations at import time.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "mahlercocycle._ckernels",
                ["src/mahlercocycle/_ckernels.pyx"],
                extra_compile_args=["-O3", "-fcx-limited-range"],
            )
        ],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )

setup(ext_modules=ext_modules)
