"""Build script: compiles the optional fast text kernels.

The package works without the compiled extension (a pure-Python fallback is
selected at import time), so the build degrades gracefully when Cython or a
C compiler is unavailable.
"""

import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is None:
    ext_modules = []
else:
    # -ffp-contract=off: the compiled scoring loop must round exactly like
    # CPython floats (no fused multiply-add), so both kernel backends produce
    # bit-identical predictions.
    compile_args = [] if sys.platform == "win32" else ["-O2", "-ffp-contract=off"]
    ext_modules = cythonize(
        [
            Extension(
                "faqforge._kernels._fast",
                ["src/faqforge/_kernels/_fast.pyx"],
                extra_compile_args=compile_args,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
