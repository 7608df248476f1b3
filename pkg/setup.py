import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GRADEDFLAG_NO_EXT"):
    try:
        import gmpy2
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "gradedflag._kernels",
                    ["src/gradedflag/_kernels.pyx"],
                    include_dirs=[os.path.dirname(gmpy2.__file__)],
                    libraries=["gmp"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
