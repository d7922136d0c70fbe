from setuptools import setup, find_packages

setup(
    name='uclinalg',
    version='1.0.0',
    description='Unit-consistent generalized inverses and unit-invariant matrix decompositions',
    license='BSD 3-Clause License',
    packages=find_packages(exclude=('tests', 'tests.*')),
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'pandas',
        'scipy'
    ],
    extras_require={
        'test': [
            'pytest'
        ]
    },
    entry_points={
        'console_scripts': [
            'ucinv=uclinalg.cli:main'
        ]
    }
)
