from setuptools import setup, find_packages

setup(
    name="vote_tally",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    install_requires=[
        "numpy",
        "pandas",
        "python-dotenv",
        "colorlog",
        "matplotlib",
    ],
    entry_points={
        "console_scripts": [
            "tally = vote_tally.Main.main:main",
        ],
    },
    description="Vote counting: plurality, approval, score, two-round, Condorcet and STV",
    python_requires=">=3.8",
)
