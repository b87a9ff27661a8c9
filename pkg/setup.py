from setuptools import find_packages, setup

import qhopf


def read_file(path: str):
    with open(path, "r") as file:
        return file.read()


setup_requires = [
    "wheel",
]

setup(
    name="qhopf-verifier",
    version=qhopf.__version__,
    url=qhopf.__url__,
    description="Exact verifier for small quasi-Hopf algebras, Yetter-Drinfeld modules and their biproducts",
    long_description=read_file("README.md"),
    long_description_content_type="text/markdown",
    author=qhopf.__author__,
    author_email=qhopf.__email__,
    platforms="any",
    classifiers=[
        "Environment :: Console",
        "License :: OSI Approved :: GNU General Public License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(),
    package_data={"qhopf": ["api/schema.json"]},
    include_package_data=True,
    python_requires=">=3.8",
    install_requires=[
        "setuptools>=59",
        "celery>=5.2",
        "kombu>=5.2",
        "jsonschema>=4.0",
        "numpy>=1.21",
        "sympy>=1.9",
    ],
    entry_points={
        "console_scripts": [
            "qhopf = qhopf.api.cli:main",
        ],
    },
)
