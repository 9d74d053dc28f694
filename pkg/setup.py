import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HYPERTREES_NO_EXTENSION", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hypertrees._kernel", ["src/hypertrees/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Cython unavailable: install the pure-Python package only.
        ext_modules = []

setup(ext_modules=ext_modules)
