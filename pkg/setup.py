"""Build script: compiles the optional word-scan extension when possible.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so any compiler or Cython failure downgrades
to a plain install instead of aborting.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extension_modules():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        print("funnelgroup: Cython not available, installing pure-Python kernels only")
        return []
    ext = Extension(
        "funnelgroup._kernels._wordscan",
        ["src/funnelgroup/_kernels/_wordscan.pyx"],
        # -ffp-contract=off keeps the compiled kernel bit-identical to the
        # pure-Python twin (no FMA contraction of a*b+c*d expressions).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    try:
        return cythonize([ext], language_level=3)
    except Exception as exc:
        print(f"funnelgroup: cythonize failed ({exc}); installing pure-Python kernels only",
              file=sys.stderr)
        return []


class optional_build_ext(build_ext):
    """Never fail the install over the accelerator extension."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"funnelgroup: extension build skipped ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"funnelgroup: building {ext.name} failed ({exc}); "
                  "falling back to pure-Python kernels", file=sys.stderr)


setup(ext_modules=extension_modules(), cmdclass={"build_ext": optional_build_ext})
