import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "daelsq._kernels",
    ["src/daelsq/_kernels.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3"],
)

setup(ext_modules=cythonize([ext], language_level=3))
