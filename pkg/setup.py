from setuptools import setup, find_packages

setup(
    name="minimax-olo",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.26.4",
        "scipy>=1.12.0",
        "pandas>=2.2.1",
        "pydantic>=2.6.0",
        "python-dotenv>=1.0.1",
    ],
    extras_require={
        "dev": ["pytest>=8.0.2", "black>=24.2.0", "ruff>=0.3.0"],
    },
    entry_points={
        "console_scripts": ["minimax-olo=minimax_olo.main:main"],
    },
    python_requires=">=3.11",
)
