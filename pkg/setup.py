"""Build script.  The compiled kernel is optional: if Cython or a C compiler
is unavailable the package installs anyway and falls back to the pure-Python
kernel selected at import time (see wittkit._kernel)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "wittkit._kernel._speedups",
                ["src/wittkit/_kernel/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
