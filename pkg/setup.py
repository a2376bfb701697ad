"""Build the optional compiled kernels.

The package is pure Python plus one optional Cython extension
(`leavittpath._speedups`).  If Cython or a C compiler is missing the build
falls through and the library transparently uses the pure-Python kernels.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to a pure-Python install on any failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: building leavittpath._speedups failed ({exc}); "
              "falling back to the pure-Python kernels")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - Cython not installed
        return []
    return cythonize(
        [
            Extension(
                "leavittpath._speedups",
                ["src/leavittpath/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
