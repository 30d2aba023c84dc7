import codecs
from setuptools import setup, find_packages
import os

package_root = os.path.abspath(os.path.dirname(__file__))

version = {}
with open(os.path.join(package_root, "DDPerfLib/version.py")) as fp:
    exec(fp.read(), version)
version = version["__version__"]

setup(
    name="DDPerfLib",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.9",
        "pandas>=1.5",
        "numba>=0.56",  # nogil kernels for the band factorisation
    ],
    python_requires='>=3.9',
    description="Domain decomposition Laplace solver and divide-and-conquer parallel performance metrics",
    long_description=codecs.open("README.md", "r", "utf-8").read(),
    author="DDPerfLib contributors",
    license=("MIT"),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: System :: Benchmark",
    ],
    version=version,
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={
        "console_scripts": [
            "ddperf=DDPerfLib.bench.cli:main",
        ],
    },
    keywords=[
        "domain decomposition",
        "schur complement",
        "banded LU",
        "conjugate gradient",
        "parallel efficiency",
        "speedup",
    ],
)
