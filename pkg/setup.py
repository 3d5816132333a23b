from setuptools import setup, find_packages
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="consensusmine",
    version="0.1.0",
    description="Consensus intervals for voters with interval approval preferences",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="consensusmine Contributors",
    packages=find_packages(exclude=["tests", "tests.*", "benchmarks"]),
    install_requires=[
        "duckdb>=0.9.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "tqdm>=4.65.0",
    ],
    entry_points={
        "console_scripts": [
            "consensusmine=consensusmine.cli:main",
        ],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="social-choice approval-voting erm sample-complexity active-learning",
)
