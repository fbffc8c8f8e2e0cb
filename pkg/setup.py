from setuptools import setup, find_packages

setup(
    name="ginlex",
    version="1.0.0",
    description="Generic initial ideals, lex-segment ideals and Koszul-Betti numbers",
    python_requires=">=3.9",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    extras_require={
        "test": ["hypothesis>=6", "sympy>=1.9"],
    },
    entry_points={
        "console_scripts": [
            "ginlex=ginlex.main:main",
        ],
    },
)
