from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("localdec._kernel._mccore", ["src/localdec/_kernel/_mccore.pyx"])],
        language_level=3,
    )
except ImportError:
    # The package still works without the compiled kernel; the NumPy
    # fallback is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
