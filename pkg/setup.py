import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or with HUFFKIT_NO_EXT=1)
# the package installs pure-Python only and huffkit.kernels falls back at import.
ext_modules = []
if not os.environ.get("HUFFKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("huffkit._kernels", ["src/huffkit/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
