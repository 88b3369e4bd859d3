"""Build script: compiles the optional speedup extension when Cython and a
C toolchain are available; the package works without it via the
pure-Python kernel fallback."""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "mmsynth.kernels._speedups",
                sources=["src/mmsynth/kernels/_speedups.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
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
    print("Cython/numpy unavailable at build time; skipping the compiled kernels")

setup(ext_modules=ext_modules)
