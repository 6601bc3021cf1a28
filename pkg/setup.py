"""Build glue for the optional compiled kernel.

The extension needs Cython and gmpy2 at build time (it is compiled
against gmpy2's C API and linked with the GMP library gmpy2 bundles, so
both share one GMP copy).  When either is missing the build degrades to
pure Python; spincouple.lp falls back at import time.
"""

import glob
import os

from setuptools import setup

ext_modules = []
try:
    import gmpy2
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    pass
else:
    pkg_dir = os.path.dirname(os.path.abspath(gmpy2.__file__))
    site_dir = os.path.dirname(pkg_dir)
    libs_dir = os.path.join(site_dir, "gmpy2.libs")
    bundled = sorted(glob.glob(os.path.join(libs_dir, "libgmp*.so*")))
    if bundled:
        libraries = []
        link_args = [bundled[0], "-Wl,-rpath," + libs_dir]
    else:
        libraries = ["gmp"]
        link_args = []
    ext_modules = cythonize(
        [
            Extension(
                "spincouple._kernel_cy",
                ["src/spincouple/_kernel_cy.pyx"],
                include_dirs=[pkg_dir],
                libraries=libraries,
                extra_link_args=link_args,
            )
        ],
        language_level="3",
        include_path=[site_dir],
    )

setup(ext_modules=ext_modules)
