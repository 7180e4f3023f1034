from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pathprob._kernel",
                ["src/pathprob/_kernel.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    # no Cython: install with the pure-Python kernel only
    ext_modules = []

setup(ext_modules=ext_modules)
