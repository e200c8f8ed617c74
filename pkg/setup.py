import setuptools

__version__ = "0.1.0"
__author__ = "scfgprob developers"


with open("README.md", "r") as fh:
    long_description = fh.read()

requires = [
    "matplotlib",
    "numpy",
    "pandas",
    "pyparsing",
    "scipy",
    "tabulate",
]

setuptools.setup(
    name="scfgprob",
    version=__version__,
    author=__author__,
    description="Probabilities of regular languages under stochastic "
                "context-free grammars",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(include=["scfgprob", "scfgprob.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Natural Language :: English",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=requires,
    entry_points={"console_scripts": ["scfgprob=scfgprob.cli:main"]},
    keywords="stochastic context-free grammar probabilistic polynomial system "
             "newton regular language",
    include_package_data=True,
    data_files=[("", ["README.md"])],
)
