import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "eclat._speedups",
                ["src/eclat/_speedups.pyx"],
                # fp-contract off: the decoder must round bit-identically
                # to the pure-Python fallback, so no FMA fusion.
                extra_compile_args=["-O3", "-ffp-contract=off"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still installs; the pure-Python kernels
    # are selected at import time.
    extensions = []

setup(ext_modules=extensions)
