"""Build hook for the optional compiled kernels.

The package is pure Python out of the box.  When Cython and a C compiler
are available, the hot loops in ``dyadicmf/_kernels/_core.pyx`` are
compiled and picked up automatically at import time; otherwise the numpy
fallback is used and nothing here matters.

Build the extension in place for a source checkout with:

    python setup.py build_ext --inplace
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
                "dyadicmf._kernels._core",
                ["src/dyadicmf/_kernels/_core.pyx"],
                # no -ffast-math: kernels must be bit-identical to the
                # numpy fallback.
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
