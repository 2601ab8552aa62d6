"""Build script: compiles the optional stencil-kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time); building it just makes the hot loops faster.  If
Cython or a C compiler is unavailable the build degrades to pure Python
instead of failing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "traitfront._kernels._compiled",
                ["src/traitfront/_kernels/_compiled.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError as exc:  # pragma: no cover - build environment dependent
    print(f"NOTE: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
