from setuptools import setup, find_packages

setup(
    name="flexion_engine",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples"]),
    install_requires=[
        'numpy',
        'sympy',
        'pyyaml',
        'tqdm',
        'multiprocessing-logging',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': [
            'flexion=src.main:main',
        ],
    },
)
