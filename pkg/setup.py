"""Build script: compiles the hot text-processing kernels with Cython.

The pure-Python module src/ontomatch/_kernels.py is the single source of
truth. At build time it is copied to _kernels_c.py and compiled; at import
time ontomatch.kernels prefers the compiled module and falls back to the
interpreted one, so the package works without a C toolchain.
"""

import shutil
from pathlib import Path

from setuptools import Extension, setup

HERE = Path(__file__).parent
KERNELS = HERE / "src" / "ontomatch" / "_kernels.py"
KERNELS_C = HERE / "src" / "ontomatch" / "_kernels_c.py"


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    shutil.copyfile(KERNELS, KERNELS_C)
    # setuptools requires /-separated paths relative to this file
    ext = Extension("ontomatch._kernels_c", ["src/ontomatch/_kernels_c.py"])
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=extensions())
