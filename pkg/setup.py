import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COLORFIBER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "colorfiber._fastcore",
                    ["src/colorfiber/_fastcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # No Cython at build time: install the pure-Python package only.
        # colorfiber._backend falls back to the interpreted kernels.
        ext_modules = []

setup(ext_modules=ext_modules)
