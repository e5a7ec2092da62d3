"""Build script: compiles the optional exact-elimination extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so the extension is marked optional
and any build failure degrades to the fallback instead of aborting the
install.  A pre-generated C file is used when Cython is not installed.
"""

import os

from setuptools import Extension, setup

HERE = os.path.dirname(os.path.abspath(__file__))
PYX = os.path.join("src", "fatpoints", "_core.pyx")
C = os.path.join("src", "fatpoints", "_core.c")


def extensions():
    use_cython = False
    try:
        import Cython  # noqa: F401

        use_cython = os.path.exists(os.path.join(HERE, PYX))
    except ImportError:
        pass
    if use_cython:
        from Cython.Build import cythonize

        return cythonize(
            [Extension("fatpoints._core", [PYX], optional=True)],
            compiler_directives={"language_level": "3"},
        )
    if os.path.exists(os.path.join(HERE, C)):
        return [Extension("fatpoints._core", [C], optional=True)]
    return []


# packages/package_dir duplicated from pyproject.toml so that legacy
# setuptools (< 61, e.g. the copy bundled into fresh venvs) still resolves
# the src layout on the editable/inplace build path
setup(
    name="fatpoints",
    version="0.1.0",
    packages=["fatpoints"],
    package_dir={"": "src"},
    entry_points={"console_scripts": ["fatpoints = fatpoints.cli:entry"]},
    ext_modules=extensions(),
)
