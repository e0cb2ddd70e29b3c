import setuptools
from setuptools import setup

with open("hspy/_version.py") as f:
    version = f.read().split('"')[1]

setup(
    name="hspy",
    version=version,
    author="hspy developers",
    author_email="",
    description="Exact analysis of Hermite subdivision schemes",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
        ],
    entry_points={"console_scripts": ["hspy=hspy.hs_cli:main"]},
    install_requires=[
        "numpy",
        "click>=7.0"],
    extras_require={"test": ["pytest"], "docs": ["sphinx", "sphinx_rtd_theme"]},
    python_requires=">=3.7",
    license="BSD license",
    packages=["hspy"],
)
