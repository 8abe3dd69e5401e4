from setuptools import setup, find_packages
import re


with open("README.md", "r") as fh:
    long_description = fh.read()

with open("tdl/__init__.py", "r") as fh:
    version = re.search(r'__version__ = "([^"]+)"', fh.read()).group(1)

setup(
    name="tdl",
    version=version,
    packages=find_packages(exclude=["test"]),
    license="Apache License 2.0",
    description="Exact and sampled experiments on digraphs avoiding blow-ups of transitive tournaments.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=">=3.10",
    install_requires=["numpy>=1.17", "scipy>=1.4", "networkx>=2.4"],
    entry_points={
      "console_scripts": ["tdl=tdl.command:main"],
    },
)
