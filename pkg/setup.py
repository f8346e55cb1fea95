"""Build script for the optional compiled pre-filter kernel.

The package is pure Python except for ``rigidpow._prefilter_fast``, a small
Cython extension that speeds up the exhaustive-search pre-filter.  If Cython
or a C compiler is unavailable the extension is skipped and the pure Python
kernel is selected automatically at import time.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to the pure Python kernel on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(
            "WARNING: compiled pre-filter kernel not built (%s); "
            "the pure Python kernel will be used" % (exc,)
        )


def extensions():
    if os.environ.get("RIGIDPOW_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; skipping compiled kernel")
        return []
    ext = Extension("rigidpow._prefilter_fast", ["src/rigidpow/_prefilter_fast.pyx"])
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
