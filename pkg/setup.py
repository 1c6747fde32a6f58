"""Build hook for the optional compiled min-cut core.

The package is pure Python except for ``pottscut._maxflow_core``, a Cython
translation of the same Dinic implementation that ships as
``pottscut._maxflow_py``.  If Cython or a C compiler is unavailable the
extension is simply skipped and the package falls back to the Python kernel
at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("POTTSCUT_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "pottscut._maxflow_core",
                    ["src/pottscut/_maxflow_core.pyx"],
                )
            ],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
